#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"
#include "tau3corr/arith.hpp"
#include "tau3corr/constants.hpp"
#include "tau3corr/correlation.hpp"
#include "tau3corr/errors.hpp"
#include "tau3corr/lemmas.hpp"
#include "tau3corr/singular_series.hpp"
#include "tau3corr/variance.hpp"

namespace {

using namespace tau3corr;
using namespace tau3corr::cli;

constexpr double kS8Reference = 1.22326e-6;
constexpr const char* kGenerator = "tau3corr 0.1.0";

struct UsageError : std::runtime_error {
  UsageError(const std::string& field, const std::string& msg) : std::runtime_error("--" + field + ": " + msg) {}
};

struct RunConfig {
  std::string command;
  std::int64_t n = 2048;
  std::string n_grid_text;
  std::vector<std::int64_t> n_grid;
  std::string variance_grid_text = "geom:10:15:4";
  std::vector<std::int64_t> variance_grid;
  double delta_exponent = 4.0 / 19.0;
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  std::string out_dir = "out";
  Format format = Format::json;
  CorrelationMethod method = CorrelationMethod::modular_transform;
  double pass_constant = 10.0;
  MainTermForm main_term = MainTermForm::density;
  LaurentConvention laurent = LaurentConvention::complete;

  SingularSeriesConfig series() const { return {main_term, laurent}; }
  ExecPolicy policy() const { return {threads}; }

  // Everything that can change a value. Thread count and output directory
  // are left out: they never affect the bytes written.
  Json to_json() const {
    Json j;
    j["generator"] = kGenerator;
    j["command"] = command;
    j["n"] = n;
    j["n_grid"] = n_grid;
    if (command == "report") j["variance_grid"] = variance_grid;
    j["delta_exponent"] = delta_exponent;
    j["seed"] = seed;
    j["format"] = format == Format::csv ? "csv" : "json";
    j["method"] = method == CorrelationMethod::direct ? "direct" : "transform";
    j["pass_constant"] = pass_constant;
    j["main_term"] = std::string(to_string(main_term));
    j["laurent"] = std::string(to_string(laurent));
    return j;
  }
};

// "1024,2048,4096" or "geom:lo:hi:steps" (powers of two, steps per octave).
std::vector<std::int64_t> parse_grid(const std::string& field, const std::string& text) {
  std::vector<std::int64_t> grid;
  if (text.empty()) return grid;
  if (text.rfind("geom:", 0) == 0) {
    int lo = 0, hi = 0, steps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text.substr(5));
    in.imbue(std::locale::classic());
    if (!(in >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' || !in.eof()) {
      throw UsageError(field, "expected geom:lo:hi:steps, got '" + text + "'");
    }
    if (lo < 1 || hi > 30 || lo > hi || steps < 1 || steps > 64) {
      throw UsageError(field, "geom bounds need 1 <= lo <= hi <= 30 and 1 <= steps <= 64");
    }
    grid = geometric_grid(lo, hi, steps);
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find(',', pos), text.size());
      const std::string item = text.substr(pos, end - pos);
      std::int64_t v = 0;
      const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
      if (item.empty() || r.ec != std::errc() || r.ptr != item.data() + item.size()) {
        throw UsageError(field, "'" + item + "' is not an integer");
      }
      grid.push_back(v);
      pos = end + 1;
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 2) throw UsageError(field, "every N must be >= 2");
    if (i > 0 && grid[i] <= grid[i - 1]) throw UsageError(field, "grid must be strictly increasing");
  }
  return grid;
}

void validate(RunConfig& cfg) {
  if (cfg.n < 2) throw UsageError("n", "must be >= 2");
  if (!(cfg.delta_exponent > 0.0 && cfg.delta_exponent < 1.0)) throw UsageError("delta-exponent", "must lie in (0, 1)");
  if (cfg.threads < 1) throw UsageError("threads", "must be >= 1");
  if (!(cfg.pass_constant > 0.0)) throw UsageError("pass-constant", "must be positive");
  cfg.n_grid = parse_grid("n-grid", cfg.n_grid_text);
  cfg.variance_grid = parse_grid("variance-grid", cfg.variance_grid_text);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- sieve

Report run_sieve(const RunConfig& cfg) {
  Report r{"sieve"};
  const auto t3 = sieve(DivisorKind::tau3, cfg.n);
  const auto t2 = sieve(DivisorKind::tau2, cfg.n);
  const auto sq = sieve(DivisorKind::tau3_squared, cfg.n);
  const auto phi = sieve(DivisorKind::phi, cfg.n);
  const auto mu = sieve(DivisorKind::mu, cfg.n);
  Table t{"values", {"n", "tau3", "tau2", "tau3_squared", "phi", "mu"}};
  std::int64_t sum_t3 = 0, max_t3 = 0;
  for (std::int64_t n = 1; n <= cfg.n; ++n) {
    t.add({n, t3[n], t2[n], sq[n], phi[n], mu[n]});
    sum_t3 += t3[n];
    max_t3 = std::max(max_t3, t3[n]);
  }
  r.summary["n_max"] = cfg.n;
  r.summary["sum_tau3"] = sum_t3;
  r.summary["max_tau3"] = max_t3;
  r.tables.push_back(std::move(t));
  return r;
}

// ---------------------------------------------------------------- correlate

Json moment_json(const MomentStatistic& m) {
  Json j;
  j["N"] = m.N;
  j["Delta"] = m.Delta;
  j["second_moment"] = m.second_moment;
  j["ratio"] = m.ratio;
  return j;
}

Report run_correlate(const RunConfig& cfg) {
  Report r{"correlate"};
  if (!cfg.n_grid.empty()) {
    Table t{"trend", {"N", "Delta", "second_moment", "ratio"}};
    for (std::int64_t N : cfg.n_grid) {
      const auto p = correlation_profile(N, default_delta(N, cfg.delta_exponent), cfg.series(), cfg.method, cfg.policy());
      const auto m = moment_statistic(p);
      t.add({m.N, m.Delta, m.second_moment, m.ratio});
    }
    r.summary["points"] = static_cast<std::int64_t>(cfg.n_grid.size());
    r.tables.push_back(std::move(t));
    return r;
  }
  const auto p = correlation_profile(cfg.n, default_delta(cfg.n, cfg.delta_exponent), cfg.series(), cfg.method,
                                     cfg.policy());
  const auto m = moment_statistic(p);
  r.summary = moment_json(m);
  r.summary["ratio_exponent"] = 2.99;
  Table t{"profile", {"k", "V", "S_Delta", "diff"}};
  for (std::int64_t k = 0; k < p.N; ++k) {
    const double v = static_cast<double>(p.V.values[k]);
    t.add({k, p.V.values[k], p.S[k], v - p.S[k]});
  }
  r.tables.push_back(std::move(t));
  return r;
}

// ---------------------------------------------------------------- singular

Report run_singular(const RunConfig& cfg) {
  Report r{"singular"};
  const auto table = laurent_table(cfg.n, cfg.laurent);
  Table t{"coefficients", {"q", "A", "B", "C", "w1", "w2", "w3", "w4", "w5", "w6"}};
  double kA = 0.0, kB = 0.0, kC = 0.0;
  for (std::int64_t q = 1; q <= cfg.n; ++q) {
    const LaurentCoeffs& c = table[q];
    const WeightVector w = weights(c, cfg.main_term);
    t.add({q, c.A, c.B, c.C, w.w[0], w.w[1], w.w[2], w.w[3], w.w[4], w.w[5]});
    const double l = std::log(static_cast<double>(q + 1));
    kA = std::max(kA, std::abs(c.A) / (l * l));
    kB = std::max(kB, std::abs(c.B) / (l * l * l));
    kC = std::max(kC, std::abs(c.C) / (l * l * l * l));
  }
  r.summary["q_max"] = cfg.n;
  r.summary["max_A_over_log2"] = kA;
  r.summary["max_B_over_log3"] = kB;
  r.summary["max_C_over_log4"] = kC;
  r.tables.push_back(std::move(t));
  return r;
}

// ---------------------------------------------------------------- variance

void add_fit(Report& r, const LogPolyFit& fit, std::size_t points) {
  r.summary["fit_degree"] = fit.degree;
  r.summary["fit_points"] = static_cast<std::int64_t>(points);
  r.summary["fit_rank"] = fit.rank;
  r.summary["fit_full_rank"] = fit.full_rank;
  if (fit.full_rank) {
    r.summary["fit_S8"] = fit.coeffs.back();
    r.summary["fit_rms_relative_residual"] = fit.rms_relative_residual;
  } else {
    r.summary["fit_S8"] = nullptr;
    r.summary["fit_note"] = "degree-" + std::to_string(fit.degree) + " fit needs at least " +
                            std::to_string(fit.degree + 1) + " grid points with distinct N";
  }
  r.summary["S8_reference"] = kS8Reference;
  Table c{"fit", {"power", "coefficient"}};
  for (std::size_t j = 0; j < fit.coeffs.size(); ++j) c.add({static_cast<std::int64_t>(j), fit.coeffs[j]});
  r.tables.push_back(std::move(c));
}

Table variance_table(const std::vector<VarianceReport>& reports) {
  Table t{"reports", {"N", "Q", "Q1_direct", "Q1_identity", "Q1_match", "leading_ratio", "fit_S8"}};
  for (const auto& v : reports) {
    const Cell match = v.Q1_direct ? Cell(*v.Q1_direct == v.Q1_identity) : Cell{};
    t.add({v.N, v.Q, opt(v.Q1_direct), v.Q1_identity, match, v.leading_ratio, opt(v.fit_S8)});
  }
  return t;
}

Report run_variance(const RunConfig& cfg) {
  Report r{"variance"};
  const std::vector<std::int64_t> grid = cfg.n_grid.empty() ? std::vector<std::int64_t>{cfg.n} : cfg.n_grid;
  for (std::int64_t N : grid) {
    if (N < 16) throw UsageError(cfg.n_grid.empty() ? "n" : "n-grid", "variance needs N >= 16");
  }
  const VarianceSweep sweep = variance_sweep(grid, {cfg.laurent, true}, cfg.policy());
  r.tables.push_back(variance_table(sweep.reports));
  add_fit(r, sweep.fit, grid.size());
  return r;
}

// ---------------------------------------------------------------- verify

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Runs one check; an exception counts as a failure with its message recorded.
Check guarded(const std::string& name, const std::function<Check()>& body) {
  try {
    Check c = body();
    c.name = name;
    return c;
  } catch (const std::exception& e) {
    return {name, false, std::nan(""), 0.0, std::string("exception: ") + e.what()};
  }
}

std::vector<Check> oracle_checks(const RunConfig& cfg) {
  const std::int64_t N = cfg.n;
  std::vector<Check> out;

  out.push_back(guarded("ramanujan_sum_bruteforce", [] {
    std::int64_t mismatches = 0;
    for (std::int64_t q = 1; q <= 200; ++q) {
      for (std::int64_t k = 1; k <= 200; ++k) mismatches += ramanujan_sum(q, k) != ramanujan_sum_bruteforce(q, k);
    }
    return Check{{}, mismatches == 0, static_cast<double>(mismatches), 0.0, "q, k <= 200; exact"};
  }));

  out.push_back(guarded("sieve_pointwise", [N] {
    const auto t3 = sieve(DivisorKind::tau3, N);
    std::int64_t mismatches = 0;
    const std::int64_t step = std::max<std::int64_t>(1, N / 500);
    for (std::int64_t n = 1; n <= N; n += step) mismatches += t3[n] != tau_k_pointwise(3, n);
    return Check{{}, mismatches == 0, static_cast<double>(mismatches), 0.0, "tau3, 500 points; exact"};
  }));

  const std::int64_t n_direct = std::min<std::int64_t>(N, std::int64_t{1} << 14);
  out.push_back(guarded("correlation_direct_vs_transform", [n_direct] {
    const auto a = correlation_series(n_direct, CorrelationMethod::direct);
    const auto b = correlation_series(n_direct, CorrelationMethod::modular_transform);
    std::int64_t mismatches = 0;
    for (std::size_t k = 0; k < a.values.size(); ++k) mismatches += a.values[k] != b.values[k];
    return Check{{}, mismatches == 0, static_cast<double>(mismatches), 0.0,
                 "N = " + std::to_string(n_direct) + "; exact"};
  }));

  out.push_back(guarded("laurent_vs_triple_sum", [&cfg] {
    double worst = 0.0;
    for (std::int64_t q = 1; q <= 64; ++q) {
      const LaurentCoeffs c = laurent_coeffs(q, cfg.laurent);
      for (std::int64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const LaurentCoeffs o = laurent_coeffs_oracle(q, a, cfg.laurent);
        worst = std::max({worst, std::abs(c.A - o.A), std::abs(c.B - o.B), std::abs(c.C - o.C)});
      }
    }
    return Check{{}, worst <= 1e-8, worst, 1e-8, "q <= 64, every a coprime to q"};
  }));

  out.push_back(guarded("laurent_table_vs_pointwise", [&cfg] {
    const auto table = laurent_table(500, cfg.laurent);
    double worst = 0.0;
    for (std::int64_t q = 1; q <= 500; ++q) {
      const LaurentCoeffs c = laurent_coeffs(q, cfg.laurent);
      const double scale = 1.0 + std::abs(c.C);
      worst = std::max({worst, std::abs(c.A - table[q].A) / scale, std::abs(c.B - table[q].B) / scale,
                        std::abs(c.C - table[q].C) / scale});
    }
    return Check{{}, worst <= 1e-9, worst, 1e-9, "q <= 500"};
  }));

  out.push_back(guarded("fourier_identity", [&cfg, N] {
    const auto t3 = sieve(DivisorKind::tau3, N);
    const auto V = correlation_series(t3, N, CorrelationMethod::modular_transform);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) worst = std::max(worst, check_fourier_identity(unit(rng), V, t3).relative_error);
    return Check{{}, worst <= 1e-6, worst, 1e-6, "20 alpha from seed " + std::to_string(cfg.seed)};
  }));

  const std::int64_t n_q1 = std::min(N, kQ1DirectMax);
  out.push_back(guarded("q1_direct_vs_identity", [n_q1] {
    const std::int64_t d = q1(n_q1, Q1Route::direct);
    const std::int64_t i = q1(n_q1, Q1Route::identity);
    return Check{{}, d == i, static_cast<double>(d - i), 0.0,
                 "N = " + std::to_string(n_q1) + "; Q1 = " + std::to_string(d)};
  }));

  const std::int64_t n_g = std::min<std::int64_t>(N, 1024);
  out.push_back(guarded("g_delta_farey_vs_fourier", [&cfg, n_g] {
    const std::int64_t Delta = std::max<std::int64_t>(2, default_delta(n_g, cfg.delta_exponent));
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const GDeltaValue g = eval_G_delta(unit(rng), n_g, Delta, cfg.series(), 1.0);
      worst = std::max(worst, std::abs(g.farey_route - g.fourier_route) /
                                  std::max(std::abs(g.farey_route), std::abs(g.fourier_route)));
    }
    return Check{{}, worst <= 1e-6, worst, 1e-6,
                 "N = " + std::to_string(n_g) + ", Delta = " + std::to_string(Delta) + ", 5 alpha"};
  }));

  out.push_back(guarded("euler_product_S8", [] {
    const auto a = singular_constant_S8(1'000'000);
    const auto b = singular_constant_S8(2'000'000);
    const double err = std::abs(a.value - kS8Reference);
    const bool stable = std::abs(a.value - b.value) <= a.tail_bound;
    std::ostringstream d;
    d.imbue(std::locale::classic());
    d << "truncation 1e6; value " << fmt(a.value) << "; doubling shift " << fmt(std::abs(a.value - b.value))
      << " vs tail bound " << fmt(a.tail_bound);
    return Check{{}, err <= 5e-11 && stable, err, 5e-11, d.str()};
  }));

  for (double s : {2.0, 3.0}) {
    out.push_back(guarded("dirichlet_identity_s" + fmt(s), [s] {
      const auto c = check_tau3_squared_dirichlet(s, 1'000'000, 1'000'000);
      return Check{{}, c.pass, std::abs(c.gap), c.tail_bound + c.product_uncertainty,
                   "cutoff 1e6, margin 2"};
    }));
  }

  out.push_back(guarded("emt_square_sums", [&cfg, N] {
    const auto rep = emt_tail_bounds(std::min<std::int64_t>(N, 10'000), cfg.laurent);
    double worst = 0.0;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
      double direct = 0.0;
      const auto table = laurent_table(p, cfg.laurent);
      for (std::int64_t b = 1; b <= p; ++b) {
        const double a = emt_coeffs(p, b, table).A_tilde;
        direct += a * a;
      }
      const double closed = emt_square_sum_prime(p, cfg.laurent);
      worst = std::max(worst, std::abs(direct - closed) / std::abs(closed));
    }
    const bool finite = std::isfinite(rep.kappa_A) && std::isfinite(rep.kappa_B) && std::isfinite(rep.kappa_C);
    return Check{{}, finite && worst <= 1e-12, worst, 1e-12,
                 "prime closed form; kappa_A " + fmt(rep.kappa_A) + ", kappa_B " + fmt(rep.kappa_B) +
                     ", kappa_C " + fmt(rep.kappa_C)};
  }));

  return out;
}

Report run_verify(const RunConfig& cfg, bool& all_pass) {
  Report r{"verify"};
  const std::vector<Check> checks = oracle_checks(cfg);
  Table t{"oracle_checks", {"name", "pass", "measured", "tolerance", "detail"}};
  bool oracles_pass = true;
  for (const Check& c : checks) {
    t.add({c.name, c.pass, c.measured, c.tolerance, c.detail});
    oracles_pass = oracles_pass && c.pass;
  }
  r.tables.push_back(std::move(t));

  LemmaSuiteConfig suite;
  suite.lemma.pass_constant = cfg.pass_constant;
  suite.lemma.convention = cfg.laurent;
  bool lemmas_pass = false;
  try {
    const LemmaSuiteResult res = run_lemma_suite(suite, cfg.policy());
    Table lc{"lemma_checks",
             {"lemma_id", "parameters", "exact", "predicted", "error", "normalized_error", "pass", "printed_predicted",
              "printed_normalized_error", "printed_bound_normalized_error"}};
    for (const LemmaCheck& c : res.checks) {
      lc.add({c.lemma_id, c.parameters, c.exact, c.predicted, c.error, c.normalized_error, c.pass,
              opt(c.printed_predicted), opt(c.printed_normalized_error), opt(c.printed_bound_normalized_error)});
    }
    Table ls{"lemma_spreads", {"lemma_id", "parameters", "residues", "spread", "pass"}};
    for (const SpreadCheck& s : res.spreads) {
      ls.add({s.lemma_id, s.parameters, static_cast<std::int64_t>(s.residues.size()), s.spread, s.pass});
    }
    r.tables.push_back(std::move(lc));
    r.tables.push_back(std::move(ls));
    lemmas_pass = res.all_pass();
  } catch (const std::exception& e) {
    r.summary["lemma_suite_error"] = e.what();
  }
  all_pass = oracles_pass && lemmas_pass;
  r.summary["oracles_pass"] = oracles_pass;
  r.summary["lemmas_pass"] = lemmas_pass;
  r.summary["all_pass"] = all_pass;
  return r;
}

// ---------------------------------------------------------------- report

Report run_report(const RunConfig& cfg) {
  Report r{"report"};
  std::vector<std::int64_t> grid = cfg.n_grid;
  if (grid.empty()) {
    for (int e = 10; e <= 16; ++e) grid.push_back(std::int64_t{1} << e);
  }
  Table t{"theorem1", {"N", "Delta", "second_moment", "ratio", "ratio_over_first"}};
  double first = 0.0, worst = 0.0;
  for (std::int64_t N : grid) {
    if (N < 64) throw UsageError("n-grid", "report needs N >= 64");
    const auto m = theorem1_statistic(N, default_delta(N, cfg.delta_exponent), cfg.series(), cfg.policy());
    if (first == 0.0) first = m.ratio;
    worst = std::max(worst, m.ratio / first);
    t.add({m.N, m.Delta, m.second_moment, m.ratio, m.ratio / first});
  }
  r.summary["theorem1_max_ratio_over_first"] = worst;
  r.tables.push_back(std::move(t));

  for (std::int64_t N : cfg.variance_grid) {
    if (N < 16) throw UsageError("variance-grid", "variance needs N >= 16");
  }
  const VarianceSweep sweep = variance_sweep(cfg.variance_grid, {cfg.laurent, false}, cfg.policy());
  r.tables.push_back(variance_table(sweep.reports));
  add_fit(r, sweep.fit, cfg.variance_grid.size());
  if (!sweep.reports.empty()) {
    const auto& last = sweep.reports.back();
    r.summary["variance_N_max"] = last.N;
    r.summary["variance_leading_ratio_at_N_max"] = last.leading_ratio;
    r.summary["variance_leading_ratio_over_S8"] = last.leading_ratio / kS8Reference;
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlations of the ternary divisor function: exact tables, asymptotic checks, reports"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json", method = "transform", main_term = "density", laurent = "complete";

  const std::vector<std::string> commands = {"sieve", "correlate", "singular", "variance", "verify", "report"};
  const std::map<std::string, std::string> blurbs = {
      {"sieve", "tau3, tau, tau3^2, phi, mu on 1..n"},
      {"correlate", "V(k, N), S_Delta(k, N) and the second-moment statistic"},
      {"singular", "Laurent coefficients A, B, C(q) and weights for q <= n"},
      {"variance", "Q(N), Q1 by both routes and the log-polynomial fit"},
      {"verify", "oracle equivalences and the lemma suite; exit 0 iff all pass"},
      {"report", "trend tables: moment ratio vs N and the variance fit"}};
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
    sub->add_option("--n", cfg.n, "size N (q_max for singular)");
    sub->add_option("--n-grid", cfg.n_grid_text, "comma list of N, or geom:lo:hi:steps");
    if (name == "report") sub->add_option("--variance-grid", cfg.variance_grid_text, "grid for the variance fit");
    sub->add_option("--delta-exponent", cfg.delta_exponent, "Delta = floor(N^x)");
    sub->add_option("--seed", cfg.seed, "seed for sampled phases");
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--method", method, "correlation method")->check(CLI::IsMember({"direct", "transform"}));
    sub->add_option("--pass-constant", cfg.pass_constant, "largest admissible normalized lemma error");
    sub->add_option("--main-term", main_term, "major-arc weight")->check(CLI::IsMember({"density", "printed"}));
    sub->add_option("--laurent", laurent, "C(q) convention")->check(CLI::IsMember({"complete", "printed"}));
    sub->callback([&cfg, name] { cfg.command = name; });
  }
  CLI11_PARSE(app, argc, argv);

  cfg.format = format == "csv" ? Format::csv : Format::json;
  cfg.method = method == "direct" ? CorrelationMethod::direct : CorrelationMethod::modular_transform;
  cfg.main_term = main_term == "printed" ? MainTermForm::printed : MainTermForm::density;
  cfg.laurent = laurent == "printed" ? LaurentConvention::printed : LaurentConvention::complete;
  try {
    validate(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Report report;
    bool all_pass = true;
    if (cfg.command == "sieve") {
      report = run_sieve(cfg);
    } else if (cfg.command == "correlate") {
      report = run_correlate(cfg);
    } else if (cfg.command == "singular") {
      report = run_singular(cfg);
    } else if (cfg.command == "variance") {
      report = run_variance(cfg);
    } else if (cfg.command == "verify") {
      report = run_verify(cfg, all_pass);
    } else {
      report = run_report(cfg);
    }
    for (const auto& path : emit(report, cfg.to_json(), cfg.format, cfg.out_dir)) std::cout << path.string() << "\n";
    std::cerr << cfg.command << ": " << fmt(seconds_since(t0)) << " s\n";
    if (!all_pass) {
      std::cerr << "verify: at least one check failed\n";
      return 1;
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << cfg.command << " failed: " << e.what() << "\n";
    return 1;
  }
}
