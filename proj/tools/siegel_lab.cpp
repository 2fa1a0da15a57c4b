#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "siegel/experiments.hpp"

namespace {

struct Common {
  std::string out;
  std::string format = "csv";
};

siegel::Basis load_basis(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw siegel::ParseError("cannot open basis file " + path);
  return siegel::read_basis(in);
}

siegel::Complex parse_point(const std::string& text) {
  std::istringstream ss(text);
  double re = 0, im = 0;
  char comma = 0;
  if (!(ss >> re)) throw siegel::ParseError("--s expects RE,IM");
  if (ss >> comma) {
    if (comma != ',' || !(ss >> im)) throw siegel::ParseError("--s expects RE,IM");
  }
  std::string rest;
  if (ss >> rest) throw siegel::ParseError("--s expects RE,IM");
  return {re, im};
}

int emit(const siegel::ExperimentResult& r, const Common& common) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  std::ofstream file;
  if (!common.out.empty()) {
    file.open(common.out);
    if (!file) throw siegel::InvalidArgument("cannot write " + common.out);
  }
  std::ostream& os = common.out.empty() ? std::cout : file;
  if (common.format == "json") siegel::write_json(os, r);
  else siegel::write_csv(os, r);
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo and verification experiments on Siegel-reduced lattice bases"};
  app.require_subcommand(1);

  siegel::ExperimentConfig cfg;
  Common common;
  std::string basis_path;
  std::string point = "0.5,14.134725";
  bool list = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "base seed");
    sub->add_option("--out", common.out, "output file (default stdout)");
    sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--timings", cfg.timings, "record wall-clock timings");
  };

  auto* mean_count = app.add_subcommand("mean-count", "mean number of reduced bases against theory");
  auto* mean_an = app.add_subcommand("mean-an", "fiber-weighted mean of a_n against theory");
  for (auto* sub : {mean_count, mean_an}) {
    sub->add_option("--n", cfg.n, "dimension (2 or 3)");
    sub->add_option("--t-param", cfg.T, "Siegel parameter T");
    sub->add_option("--samples", cfg.samples, "number of lattices");
    add_common(sub);
  }

  auto* conc = app.add_subcommand("concentration", "tail of a_n / T^((n-1)/2) over the Siegel set");
  conc->add_option("--n", cfg.n_list, "dimensions")->delimiter(',');
  conc->add_option("--t-param", cfg.T, "Siegel parameter T");
  conc->add_option("--delta", cfg.delta_list, "tail thresholds")->delimiter(',');
  conc->add_option("--samples", cfg.samples, "samples per dimension");
  add_common(conc);

  auto* lll = app.add_subcommand("lll-dist", "growth factor of LLL outputs on random lattices");
  lll->add_option("--n", cfg.n, "dimension");
  lll->add_option("--delta", cfg.delta, "Lovasz constant");
  lll->add_option("--samples", cfg.samples, "number of lattices");
  lll->add_option("--scramble", cfg.scramble_steps, "random unimodular steps before reduction (default n)");
  add_common(lll);

  auto* dark = app.add_subcommand("dark-bases", "LLL output frequencies over the reduced bases of one lattice");
  dark->add_option("--n", cfg.n, "dimension of the sampled test lattice (2 or 3)");
  dark->add_option("--delta", cfg.delta, "Lovasz constant; T = 1/sqrt(delta - 1/4)");
  dark->add_option("--samples,--trials", cfg.samples, "LLL trials");
  dark->add_option("--scramble", cfg.scramble_steps, "random unimodular steps per trial (default 4n)");
  dark->add_option("--lattice-index", cfg.lattice_index, "which qualifying sampled lattice to use")
      ->check(CLI::NonNegativeNumber);
  dark->add_option("--basis", basis_path, "lattice basis file instead of a sampled lattice");
  add_common(dark);

  auto* verify = app.add_subcommand("verify", "exhaustive identity and lemma checks");
  verify->add_option("--suite", cfg.suite, "lemmas, xi, constant-terms or all")
      ->check(CLI::IsMember({"lemmas", "xi", "constant-terms", "all"}));
  add_common(verify);

  auto* xi_eval = app.add_subcommand("xi-eval", "xi, xi_q, zeta and Gamma_R at a point");
  xi_eval->add_option("--s", point, "point RE,IM");
  xi_eval->add_option("--out", common.out, "output file (default stdout)");
  xi_eval->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* enumerate = app.add_subcommand("enumerate", "count or list the reduced bases of a lattice");
  enumerate->add_option("--basis", basis_path, "basis file")->required();
  enumerate->add_option("--t-param", cfg.T, "Siegel parameter T")->required();
  enumerate->add_flag("--list", list, "print every reduced basis");
  enumerate->add_option("--out", common.out, "output file (default stdout)");
  enumerate->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (mean_count->parsed()) {
      cfg.command = "mean-count";
      return emit(siegel::cmd_mean_count(cfg), common);
    }
    if (mean_an->parsed()) {
      cfg.command = "mean-an";
      return emit(siegel::cmd_mean_an(cfg), common);
    }
    if (conc->parsed()) {
      cfg.command = "concentration";
      if (conc->count("--samples") == 0) cfg.samples = 100000;
      if (conc->count("--t-param") == 0) cfg.T = 2.0;
      return emit(siegel::cmd_concentration(cfg), common);
    }
    if (lll->parsed()) {
      cfg.command = "lll-dist";
      if (lll->count("--n") == 0) cfg.n = 40;
      if (lll->count("--delta") == 0) cfg.delta = 0.999;
      if (lll->count("--samples") == 0) cfg.samples = 200;
      return emit(siegel::cmd_lll_distribution(cfg), common);
    }
    if (dark->parsed()) {
      cfg.command = "dark-bases";
      if (dark->count("--n") == 0) cfg.n = 3;
      if (!basis_path.empty()) cfg.lattice = load_basis(basis_path);
      return emit(siegel::cmd_dark_bases(cfg), common);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      return emit(siegel::cmd_verify(cfg), common);
    }
    if (xi_eval->parsed()) return emit(siegel::cmd_xi_eval(parse_point(point)), common);
    if (enumerate->parsed()) return emit(siegel::cmd_enumerate(load_basis(basis_path), cfg.T, list), common);
  } catch (const siegel::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
