#pragma once

// Drivers behind the siegel_lab subcommands. Each command returns a result
// object holding a JSON summary, one flat table for CSV output, warnings and
// an exit code; rendering lives at the bottom of this file.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "siegel/basis.hpp"
#include "siegel/enumeration.hpp"
#include "siegel/reduction.hpp"
#include "siegel/sampling.hpp"
#include "siegel/special_functions.hpp"
#include "siegel/theory.hpp"
#include "siegel/verification.hpp"

namespace siegel {

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
  std::string command;
  int n = 2;
  std::vector<int> n_list;
  double T = 1.8;
  double delta = 0.75;
  std::vector<double> delta_list;
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
  int scramble_steps = -1;  // negative: command default
  std::optional<Basis> lattice;
  std::string suite = "all";
  int lattice_index = 0;
  bool timings = false;

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["n"] = n;
    if (!n_list.empty()) j["n_list"] = n_list;
    j["T"] = T;
    j["delta"] = delta;
    if (!delta_list.empty()) j["delta_list"] = delta_list;
    j["samples"] = samples;
    j["seed"] = seed;
    j["scramble_steps"] = scramble_steps;
    if (command == "verify") j["suite"] = suite;
    return j;
  }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<Json> rows;  // arrays aligned with columns
};

struct ExperimentResult {
  Json config;
  Json results = Json::object();
  Table table;
  std::vector<std::string> warnings;
  Json timings = Json::object();
  int exit_code = 0;
};

struct DarkBasisRecord {
  std::size_t id = 0;
  std::int64_t hits = 0;
  double energy = 0.0;
  std::optional<double> log_frequency;  // empty for unseen bases
};

namespace detail {

/// f(0..count-1) on `threads` workers; results come back in index order, so
/// the output does not depend on scheduling.
template <class F>
auto parallel_map(std::size_t count, int threads, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const int k = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (k == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < k; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline Json nullable(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

inline void require_samples(const ExperimentConfig& c) {
  if (c.samples < 0) throw InvalidArgument("samples must be non-negative");
}

inline void require_enumerable(int n) {
  if (n < 2 || n > 3) throw InvalidArgument("enumeration experiments support n = 2 or 3");
}

// Tie-aware average ranks, 1-based.
inline std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace detail

/// Spearman rank correlation; empty when fewer than 3 points or a constant input.
inline std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("spearman needs equal-length inputs");
  if (x.size() < 3) return std::nullopt;
  const auto rx = detail::average_ranks(x), ry = detail::average_ranks(y);
  const double m = 0.5 * (static_cast<double>(x.size()) + 1.0);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - m) * (ry[i] - m);
    sxx += (rx[i] - m) * (rx[i] - m);
    syy += (ry[i] - m) * (ry[i] - m);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

// ---------------------------------------------------------------------------

/// Mean of N(L) over sampled lattices against the closed form.
inline ExperimentResult cmd_mean_count(const ExperimentConfig& c) {
  detail::require_enumerable(c.n);
  detail::require_samples(c);
  if (!(c.T > 1.0)) throw InvalidArgument("T must exceed 1");
  detail::Stopwatch clock;
  ExperimentResult r;
  r.config = c.to_json();

  struct Sample {
    std::int64_t count = 0;
    bool tie = false;
    bool excluded = false;
  };
  const auto samples = detail::parallel_map(static_cast<std::size_t>(c.samples), c.threads, [&](std::size_t i) {
    Sample s;
    try {
      const Basis b = sample_unimodular_lattice(c.n, RngSeed{c.seed, i});
      const auto t = tally_reduced_bases(b, c.T);
      s.count = static_cast<std::int64_t>(t.count);
      s.tie = t.boundary_tie;
    } catch (const CapacityExceeded&) {
      s.excluded = true;
    }
    return s;
  });

  std::int64_t used = 0, ties = 0, excluded = 0;
  double sum = 0, sum_sq = 0, sum_ef = 0;
  const double scale = std::ldexp(1.0, -(c.n - 1));
  for (const auto& s : samples) {
    if (s.excluded) { ++excluded; continue; }
    if (s.tie) { ++ties; continue; }
    ++used;
    const double x = static_cast<double>(s.count);
    sum += x;
    sum_sq += x * x;
    sum_ef += x * scale;
  }
  const double theory = std::exp(log_mean_reduced_count(c.n, c.T));
  const double theory_ef = std::exp(log_mean_ef(c.n, c.T));
  std::optional<double> mean, mean_ef, variance, se, z;
  if (used > 0) {
    mean = sum / static_cast<double>(used);
    mean_ef = sum_ef / static_cast<double>(used);
    if (*mean_ef != *mean * scale) throw InternalError("mean of E_f differs from mean of N / 2^(n-1)");
  }
  if (used > 1) {
    const double m = *mean;
    variance = std::max(0.0, (sum_sq - static_cast<double>(used) * m * m) / static_cast<double>(used - 1));
    se = std::sqrt(*variance / static_cast<double>(used));
    if (*se > 0) z = (m - theory) / *se;
  }

  if (ties) r.warnings.push_back(std::to_string(ties) + " boundary-tie lattices counted separately and excluded");
  if (excluded) r.warnings.push_back(std::to_string(excluded) + " samples excluded: enumeration capacity exceeded");
  const bool too_many_excluded = excluded * 1000 >= std::max<std::int64_t>(c.samples, 1);

  if (!z) r.exit_code = 2;
  else r.exit_code = (std::abs(*z) <= 3.0 && !too_many_excluded) ? 0 : 1;

  r.results = Json{{"n", c.n},
                   {"T", c.T},
                   {"samples", c.samples},
                   {"used", used},
                   {"ties", ties},
                   {"excluded", excluded},
                   {"mean_N", detail::nullable(mean)},
                   {"se", detail::nullable(se)},
                   {"theory", theory},
                   {"z", detail::nullable(z)},
                   {"mean_Ef", detail::nullable(mean_ef)},
                   {"theory_Ef", theory_ef},
                   {"variance", detail::nullable(variance)}};
  r.table.columns = {"n", "T", "samples", "seed", "mean_N", "se", "theory", "z", "mean_Ef", "variance", "ties", "excluded"};
  r.table.rows.push_back(Json::array({c.n, c.T, c.samples, c.seed, detail::nullable(mean), detail::nullable(se), theory,
                                      detail::nullable(z), detail::nullable(mean_ef), detail::nullable(variance), ties,
                                      excluded}));
  if (c.timings) r.timings["total_s"] = clock.seconds();
  return r;
}

/// Fiber-weighted mean of a_n: sum over samples of sum over reduced bases of
/// a_n, divided by the sum of N. The standard error uses the delta method.
inline ExperimentResult cmd_mean_an(const ExperimentConfig& c) {
  detail::require_enumerable(c.n);
  detail::require_samples(c);
  if (!(c.T > 1.0)) throw InvalidArgument("T must exceed 1");
  detail::Stopwatch clock;
  ExperimentResult r;
  r.config = c.to_json();

  struct Sample {
    double sum_an = 0;
    double count = 0;
    bool tie = false;
    bool excluded = false;
  };
  const auto samples = detail::parallel_map(static_cast<std::size_t>(c.samples), c.threads, [&](std::size_t i) {
    Sample s;
    try {
      const Basis b = sample_unimodular_lattice(c.n, RngSeed{c.seed, i});
      const auto set = enumerate_reduced_bases(b, c.T);
      s.tie = set.boundary_tie;
      s.count = static_cast<double>(set.size());
      for (const auto& basis : set.bases) s.sum_an += basis.rows().row(c.n - 1).norm();
    } catch (const CapacityExceeded&) {
      s.excluded = true;
    }
    return s;
  });

  std::int64_t used = 0, ties = 0, excluded = 0;
  double sx = 0, sy = 0;
  for (const auto& s : samples) {
    if (s.excluded) { ++excluded; continue; }
    if (s.tie) { ++ties; continue; }
    ++used;
    sx += s.sum_an;
    sy += s.count;
  }
  const auto th = mean_last_gso_norm(c.n, c.T);
  std::optional<double> ratio, se, z;
  if (used > 0 && sy > 0) ratio = sx / sy;
  if (used > 1 && ratio) {
    const double ybar = sy / static_cast<double>(used);
    double ss = 0;
    for (const auto& s : samples) {
      if (s.excluded || s.tie) continue;
      const double e = s.sum_an - *ratio * s.count;
      ss += e * e;
    }
    se = std::sqrt(ss / static_cast<double>(used - 1) / static_cast<double>(used)) / ybar;
    if (*se > 0) z = (*ratio - th.value) / *se;
  }
  if (ties) r.warnings.push_back(std::to_string(ties) + " boundary-tie lattices counted separately and excluded");
  if (excluded) r.warnings.push_back(std::to_string(excluded) + " samples excluded: enumeration capacity exceeded");
  const bool too_many_excluded = excluded * 1000 >= std::max<std::int64_t>(c.samples, 1);
  if (!z) r.exit_code = 2;
  else r.exit_code = (std::abs(*z) <= 3.0 && !too_many_excluded) ? 0 : 1;

  r.results = Json{{"n", c.n},
                   {"T", c.T},
                   {"samples", c.samples},
                   {"used", used},
                   {"ties", ties},
                   {"excluded", excluded},
                   {"total_bases", sy},
                   {"mean_an", detail::nullable(ratio)},
                   {"se", detail::nullable(se)},
                   {"theory", th.value},
                   {"theory_ratio", th.ratio},
                   {"z", detail::nullable(z)}};
  r.table.columns = {"n", "T", "samples", "seed", "mean_an", "se", "theory", "z", "total_bases", "ties", "excluded"};
  r.table.rows.push_back(Json::array({c.n, c.T, c.samples, c.seed, detail::nullable(ratio), detail::nullable(se),
                                      th.value, detail::nullable(z), sy, ties, excluded}));
  if (c.timings) r.timings["total_s"] = clock.seconds();
  return r;
}

/// Tail probabilities P[a_n / T^{(n-1)/2} < 1 - delta] over random points of
/// the Siegel set, with the mean log-ratio against -H_{n-1}/n.
inline ExperimentResult cmd_concentration(const ExperimentConfig& c) {
  detail::require_samples(c);
  if (!(c.T > 1.0)) throw InvalidArgument("T must exceed 1");
  const std::vector<int> ns = c.n_list.empty() ? std::vector<int>{10, 40, 160} : c.n_list;
  const std::vector<double> deltas = c.delta_list.empty() ? std::vector<double>{0.3} : c.delta_list;
  for (int n : ns) {
    if (n < 2 || n >= (1 << 20)) throw InvalidArgument("n must lie in [2, 2^20)");
  }
  for (double d : deltas) {
    if (!(d >= 0.0 && d < 1.0)) throw InvalidArgument("tail thresholds delta must lie in [0, 1)");
  }
  detail::Stopwatch clock;
  ExperimentResult r;
  r.config = c.to_json();
  r.table.columns = {"n", "T", "delta", "samples", "seed", "tail_prob", "mean_log_ratio", "theory_log_ratio", "rel_err"};

  std::map<double, std::vector<double>> tails;
  Json per_n = Json::array();
  for (int n : ns) {
    const auto logs = detail::parallel_map(static_cast<std::size_t>(c.samples), c.threads, [&](std::size_t i) {
      Rng rng(RngSeed{c.seed, (static_cast<std::uint64_t>(n) << 40) | i});
      return sample_siegel_gso(n, c.T, rng).log_ratio;
    });
    double mean = 0;
    for (double v : logs) mean += v;
    mean /= std::max<double>(1.0, static_cast<double>(logs.size()));
    const double theory = mean_log_ratio(n);
    const double rel = std::abs(mean - theory) / std::abs(theory);
    Json entry{{"n", n}, {"mean_log_ratio", mean}, {"theory_log_ratio", theory}, {"rel_err", rel}, {"tails", Json::array()}};
    for (double d : deltas) {
      const double cut = std::log1p(-d);
      std::int64_t hits = 0;
      for (double v : logs) hits += v < cut;
      const double p = logs.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(logs.size());
      tails[d].push_back(p);
      entry["tails"].push_back(Json{{"delta", d}, {"tail_prob", p}});
      r.table.rows.push_back(Json::array({n, c.T, d, c.samples, c.seed, p, mean, theory, rel}));
    }
    per_n.push_back(entry);
  }
  Json trend = Json::array();
  for (double d : deltas) {
    const auto& p = tails[d];
    bool dec = true;
    for (std::size_t i = 1; i < p.size(); ++i) dec = dec && p[i] < p[i - 1];
    trend.push_back(Json{{"delta", d}, {"strictly_decreasing", dec}});
    if (!dec) r.warnings.push_back("tail probability at delta = " + Json(d).dump() + " is not strictly decreasing in n");
  }
  r.results = Json{{"T", c.T}, {"samples", c.samples}, {"by_n", per_n}, {"trend", trend}};
  if (c.timings) r.timings["total_s"] = clock.seconds();
  return r;
}

/// Growth factor g = |x_n|^{1/n} of LLL outputs on scrambled random
/// covolume-1 lattices, against the random reduced-basis prediction.
inline ExperimentResult cmd_lll_distribution(const ExperimentConfig& c) {
  detail::require_samples(c);
  if (c.n < 2) throw InvalidArgument("n must be at least 2");
  const double T = lll_parameter(c.delta);
  const int steps = c.scramble_steps < 0 ? c.n : c.scramble_steps;
  detail::Stopwatch clock;
  ExperimentResult r;
  r.config = c.to_json();
  r.config["scramble_steps"] = steps;

  struct Sample {
    double log_g = 0;
    double quality = 0;
    std::size_t swaps = 0;
  };
  const auto samples = detail::parallel_map(static_cast<std::size_t>(c.samples), c.threads, [&](std::size_t i) {
    Rng rng(RngSeed{c.seed, i});
    const Basis lattice = sample_unimodular_lattice(c.n, rng);
    const auto rep = lll_reduce(scramble_basis(lattice, steps, rng), c.delta);
    return Sample{std::log(rep.output.rows().row(c.n - 1).norm()) / c.n, rep.quality_ratio, rep.swaps};
  });

  std::optional<double> g, sd, quality;
  double lo = 0, hi = 0;
  if (!samples.empty()) {
    double m = 0, q = 0;
    lo = hi = samples.front().log_g;
    for (const auto& s : samples) {
      m += s.log_g;
      q += s.quality;
      lo = std::min(lo, s.log_g);
      hi = std::max(hi, s.log_g);
    }
    m /= static_cast<double>(samples.size());
    g = std::exp(m);
    quality = q / static_cast<double>(samples.size());
    if (samples.size() > 1) {
      double v = 0;
      for (const auto& s : samples) v += (s.log_g - m) * (s.log_g - m);
      sd = std::sqrt(v / static_cast<double>(samples.size() - 1));
    }
  }
  const double reduced_g = std::pow(mean_last_gso_norm(c.n, T).value, 1.0 / c.n);

  constexpr int kBins = 20;
  Json hist = Json::array();
  if (!samples.empty()) {
    const double glo = std::exp(lo), ghi = std::exp(hi);
    const double width = ghi > glo ? (ghi - glo) / kBins : 1.0;
    std::vector<std::int64_t> counts(kBins, 0);
    for (const auto& s : samples) {
      const int b = std::min(kBins - 1, static_cast<int>((std::exp(s.log_g) - glo) / width));
      ++counts[b];
    }
    for (int b = 0; b < kBins; ++b) {
      hist.push_back(Json{{"lo", glo + b * width}, {"hi", glo + (b + 1) * width}, {"count", counts[b]}});
    }
  }
  if (g && *g > reduced_g) r.warnings.push_back("LLL growth factor exceeds the random reduced-basis prediction");

  r.results = Json{{"n", c.n},
                   {"delta", c.delta},
                   {"T", T},
                   {"samples", c.samples},
                   {"scramble_steps", steps},
                   {"g", detail::nullable(g)},
                   {"sd_log_g", detail::nullable(sd)},
                   {"reduced_mean_g", reduced_g},
                   {"sqrt_T", std::sqrt(T)},
                   {"mean_quality_ratio", detail::nullable(quality)},
                   {"histogram", hist}};
  r.table.columns = {"n", "delta", "T", "samples", "seed", "scramble_steps", "g", "sd_log_g", "reduced_mean_g", "sqrt_T",
                     "mean_quality_ratio"};
  r.table.rows.push_back(Json::array({c.n, c.delta, T, c.samples, c.seed, steps, detail::nullable(g),
                                      detail::nullable(sd), reduced_g, std::sqrt(T), detail::nullable(quality)}));
  if (c.timings) r.timings["total_s"] = clock.seconds();
  return r;
}

/// The `index`-th sampled lattice (streams 2^62 + k) with at least
/// `min_count` reduced bases at T and no boundary tie.
inline Basis find_test_lattice(int n, double T, std::uint64_t seed, std::size_t min_count, int index = 0) {
  for (std::uint64_t k = 0; k < 100000; ++k) {
    Basis b = sample_unimodular_lattice(n, RngSeed{seed, (std::uint64_t{1} << 62) + k});
    const auto t = tally_reduced_bases(b, T);
    if (t.count >= min_count && !t.boundary_tie && index-- == 0) return b;
  }
  throw InvalidArgument("no sampled lattice has enough reduced bases at this T");
}

/// LLL output frequencies over the enumerated reduced bases of one lattice.
inline ExperimentResult cmd_dark_bases(const ExperimentConfig& c) {
  detail::require_samples(c);
  const double T = lll_parameter(c.delta);
  detail::Stopwatch clock;
  ExperimentResult r;
  r.config = c.to_json();
  r.config.erase("T");
  r.config["lattice_index"] = c.lattice_index;
  const Basis lattice = c.lattice ? *c.lattice : find_test_lattice(c.n, T, c.seed, 8, c.lattice_index);
  detail::require_enumerable(lattice.dim());
  const int steps = c.scramble_steps < 0 ? 4 * lattice.dim() : c.scramble_steps;
  r.config["scramble_steps"] = steps;
  const auto set = enumerate_reduced_bases(lattice, T);
  if (set.boundary_tie) r.warnings.push_back("lattice has a boundary tie at this T; matches may be ambiguous");

  const auto hits_of = detail::parallel_map(static_cast<std::size_t>(c.samples), c.threads, [&](std::size_t i) {
    Rng rng(RngSeed{c.seed, i});
    const Matrix u = random_unimodular(lattice.dim(), steps, rng);
    const auto rep = lll_reduce(Basis(u * lattice.rows()), c.delta);
    // The output's integer coordinates are exact even when the scrambled
    // input carries rounding error, so match the exact lattice vectors.
    const Matrix w = (rep.transform * u).array().round().matrix();
    const auto k = set.find(Basis(w * lattice.rows()));
    if (!k) throw UnmatchedOutput("LLL output of trial " + std::to_string(i) + " is not an enumerated reduced basis");
    return *k;
  });

  std::vector<DarkBasisRecord> records(set.size());
  for (std::size_t k = 0; k < set.size(); ++k) {
    records[k].id = k;
    records[k].energy = energy(set.bases[k]);
  }
  for (std::size_t k : hits_of) ++records[k].hits;
  std::int64_t seen = 0, max_hits = 0, min_hits = 0;
  bool first = true;
  std::vector<double> neg_log_energy, log_freq;
  for (auto& rec : records) {
    if (rec.hits == 0) continue;
    ++seen;
    rec.log_frequency = std::log(static_cast<double>(rec.hits) / static_cast<double>(c.samples));
    neg_log_energy.push_back(-std::log(rec.energy));
    log_freq.push_back(*rec.log_frequency);
    max_hits = first ? rec.hits : std::max(max_hits, rec.hits);
    min_hits = first ? rec.hits : std::min(min_hits, rec.hits);
    first = false;
  }
  const auto rho = spearman(neg_log_energy, log_freq);
  std::optional<double> nonuniformity;
  if (seen > 0) nonuniformity = static_cast<double>(max_hits) / static_cast<double>(min_hits);
  const std::int64_t unseen = static_cast<std::int64_t>(set.size()) - seen;

  Json recs = Json::array();
  r.table.columns = {"id", "hits", "energy", "log_frequency"};
  for (const auto& rec : records) {
    recs.push_back(Json{{"id", rec.id}, {"hits", rec.hits}, {"energy", rec.energy},
                        {"log_frequency", detail::nullable(rec.log_frequency)}});
    r.table.rows.push_back(Json::array({rec.id, rec.hits, rec.energy, detail::nullable(rec.log_frequency)}));
  }
  Json lat = Json::array();
  for (int i = 0; i < lattice.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < lattice.dim(); ++j) row.push_back(lattice.rows()(i, j));
    lat.push_back(row);
  }
  r.results = Json{{"n", lattice.dim()},
                   {"delta", c.delta},
                   {"T", T},
                   {"trials", c.samples},
                   {"lattice", lat},
                   {"reduced_bases", set.size()},
                   {"seen", seen},
                   {"unseen", unseen},
                   {"nonuniformity", detail::nullable(nonuniformity)},
                   {"spearman_neg_log_energy_vs_log_frequency", detail::nullable(rho)},
                   {"records", recs}};
  r.exit_code = c.samples == 0 ? 2 : 0;
  if (c.timings) r.timings["total_s"] = clock.seconds();
  return r;
}

/// Exhaustive and grid checks; exit code 0 iff every check passes.
inline ExperimentResult cmd_verify(const ExperimentConfig& c) {
  const std::string& s = c.suite;
  if (s != "lemmas" && s != "xi" && s != "constant-terms" && s != "all") {
    throw InvalidArgument("suite must be lemmas, xi, constant-terms or all");
  }
  ExperimentResult r;
  r.config = c.to_json();
  r.table.columns = {"check", "passed", "cases", "failures", "max_error"};
  Json checks = Json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool passed, std::int64_t cases, std::int64_t failures,
                    std::optional<double> max_error, double seconds) {
    all = all && passed;
    checks.push_back(Json{{"check", name}, {"passed", passed}, {"cases", cases}, {"failures", failures},
                          {"max_error", detail::nullable(max_error)}});
    r.table.rows.push_back(Json::array({name, passed, cases, failures, detail::nullable(max_error)}));
    if (c.timings) r.timings[name] = seconds;
  };
  const bool lemmas = s == "lemmas" || s == "all";
  const bool xis = s == "xi" || s == "all";
  const bool ct = s == "constant-terms" || s == "all";
  if (lemmas) {
    detail::Stopwatch w;
    const auto core = sweep_core_lemma(6);
    record("core_lemma", core.passed(), core.maps, core.violations + core.modification_failures, std::nullopt,
           w.seconds());
    detail::Stopwatch w2;
    const auto wb = sweep_weight_bounds(7, 50);
    const std::int64_t f = wb.bound_a_failures + wb.bound_b_failures + wb.mu_failures + wb.identity_failures;
    record("weight_bounds", wb.passed(), wb.divisions, f, std::nullopt, w2.seconds());
    detail::Stopwatch w3;
    const auto bj = sweep_bijection(7);
    record("division_bijection", bj.passed(), bj.divisions, bj.failures, std::nullopt, w3.seconds());
  }
  if (xis) {
    detail::Stopwatch w;
    const auto fe = check_functional_equation();
    record("xi_functional_equation", fe.max_error <= 1e-10, fe.points, 0, fe.max_error, w.seconds());
    detail::Stopwatch w2;
    const auto sc = check_schwarz_symmetry();
    record("xi_schwarz_symmetry", sc.max_error <= 1e-10, sc.points, 0, sc.max_error, w2.seconds());
    detail::Stopwatch w3;
    const auto um = check_unit_modulus(10);
    record("xi_unit_modulus", um.max_error <= 1e-10, um.points, 0, um.max_error, w3.seconds());
  }
  if (ct) {
    detail::Stopwatch w;
    const auto bd = check_borel_degeneration(6, 5, c.seed);
    record("borel_degeneration", bd.max_error <= 1e-9, bd.points, 0, bd.max_error, w.seconds());
    detail::Stopwatch w2;
    const auto iw = sweep_intertwining(8, 20, c.seed);
    record("intertwining_identity", iw.passed(), iw.evaluations, iw.invariant_failures,
           std::max(iw.max_relative_error, iw.max_unit_deviation), w2.seconds());
  }
  r.results = Json{{"suite", s}, {"passed", all}, {"checks", checks}};
  r.exit_code = all ? 0 : 1;
  return r;
}

/// xi, xi_q, zeta and Gamma_R at one point.
inline ExperimentResult cmd_xi_eval(Complex s) {
  ExperimentResult r;
  r.config = Json{{"command", "xi-eval"}, {"s", {s.real(), s.imag()}}};
  r.table.columns = {"function", "re", "im"};
  auto put = [&](const std::string& name, const std::function<Complex(Complex)>& f) {
    try {
      const Complex v = f(s);
      r.results[name] = {v.real(), v.imag()};
      r.table.rows.push_back(Json::array({name, v.real(), v.imag()}));
    } catch (const PoleError& e) {
      r.results[name] = nullptr;
      r.table.rows.push_back(Json::array({name, nullptr, nullptr}));
      r.warnings.push_back(name + ": " + e.what());
    }
  };
  put("xi", [](Complex z) { return xi(z); });
  put("xi_q", [](Complex z) { return xi_q(z); });
  put("zeta", [](Complex z) { return zeta(z); });
  put("gamma_r", [](Complex z) { return gamma_r(z); });
  return r;
}

/// N(L) at T, optionally with every reduced basis.
inline ExperimentResult cmd_enumerate(const Basis& lattice, double T, bool list) {
  ExperimentResult r;
  r.config = Json{{"command", "enumerate"}, {"n", lattice.dim()}, {"T", T}, {"list", list}};
  const auto set = enumerate_reduced_bases(lattice, T);
  r.results = Json{{"n", lattice.dim()}, {"T", T}, {"count", set.size()}, {"boundary_tie", set.boundary_tie}};
  if (set.boundary_tie) r.warnings.push_back("a candidate sat on a reduction boundary; the count depends on tie-breaking");
  if (!list) {
    r.table.columns = {"n", "T", "count", "boundary_tie"};
    r.table.rows.push_back(Json::array({lattice.dim(), T, set.size(), set.boundary_tie}));
    return r;
  }
  const int n = lattice.dim();
  r.table.columns = {"id", "energy"};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.table.columns.push_back("x" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  Json bases = Json::array();
  for (std::size_t k = 0; k < set.size(); ++k) {
    const double e = energy(set.bases[k]);
    Json row = Json::array({k, e});
    Json rows = Json::array();
    for (int i = 0; i < n; ++i) {
      Json v = Json::array();
      for (int j = 0; j < n; ++j) {
        row.push_back(set.bases[k].rows()(i, j));
        v.push_back(set.bases[k].rows()(i, j));
      }
      rows.push_back(v);
    }
    bases.push_back(Json{{"id", k}, {"energy", e}, {"rows", rows}});
    r.table.rows.push_back(row);
  }
  r.results["bases"] = bases;
  return r;
}

// ---------------------------------------------------------------------------

inline void write_json(std::ostream& out, const ExperimentResult& r) {
  Json doc{{"config", r.config}, {"results", r.results}, {"warnings", r.warnings}, {"timings", r.timings}};
  out << doc.dump(2) << '\n';
}

inline void write_csv(std::ostream& out, const ExperimentResult& r) {
  for (std::size_t i = 0; i < r.table.columns.size(); ++i) out << (i ? "," : "") << r.table.columns[i];
  out << '\n';
  for (const auto& row : r.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      const auto& v = row[i];
      if (v.is_null()) continue;
      if (v.is_string()) out << v.get<std::string>();
      else out << v.dump();
    }
    out << '\n';
  }
}

}  // namespace siegel
