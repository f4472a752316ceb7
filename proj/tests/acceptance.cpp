// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is
// nonzero if any selected criterion fails. `--only N` runs a single criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "condgrowth/bounds.hpp"
#include "condgrowth/cli.hpp"
#include "condgrowth/sim.hpp"
#include "condgrowth/specfun.hpp"
#include "oracles.hpp"
#include "samplers.hpp"

using namespace condgrowth;

namespace {

// Pinned tolerances.
constexpr double kDualityTol = 1e-9;
constexpr double kZMax = 4.0;
constexpr double kFigureLimitTol = 1e-6;
constexpr double kExactnessTol = 1e-8;
constexpr double kIdentityTol = 1e-8;
constexpr double kEigenTol = 1e-12;
constexpr double kNoiselessKappaTol = 1e-10;
constexpr double kViolationStdErrs = 3.0;
constexpr int kSweepInstances = 500;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // 0 = none
  std::function<Outcome()> run;
};

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome duality() {
  double worst = 0.0;
  for (double k : {1.0, 2.0, 3.0, 10.0, 100.0})
    for (double lambda : {0.0, 0.5, 4.0, 100.0})
      for (double x : {0.1, 1.0, 10.0, 200.0}) {
        const double lhs = 1.0 - specfun::noncentral_chi2_cdf(k, lambda, x).value;
        const double rhs = specfun::marcum_q(specfun::MarcumOrder(k / 2), std::sqrt(lambda), std::sqrt(x)).value;
        worst = std::max(worst, std::abs(lhs - rhs));
      }
  return {worst <= kDualityTol, fmt("max |1 - cdf - Q| = %.3g over 80 points (tol %.0e)", worst, kDualityTol)};
}

Outcome figures() {
  const auto sigmas = sim::log_grid(1e-3, 1.0, 20);
  int points = 0, bad = 0;
  double worst_z = 0.0;
  bool limits_ok = true;
  std::string limits;
  for (double eps : {0.9, 1.5}) {
    for (int m : {10, 100}) {
      sim::ExperimentConfig cfg{.m = m, .x_norm = 1.0, .eps = eps, .trials = 100'000,
                                .seed = sim::derive_seed(1, static_cast<std::uint64_t>(m), eps < 1.0 ? 1 : 2),
                                .workers = workers()};
      const auto pts = sim::norm_tail_sweep(cfg, sigmas);
      for (const auto& p : pts) {
        ++points;
        worst_z = std::max(worst_z, std::abs(p.summary.z_score));
        bad += std::abs(p.summary.z_score) > kZMax;
      }
      const double t0 = pts.front().summary.theory_prob;
      const bool ok = eps < 1.0 ? t0 >= 1.0 - kFigureLimitTol : t0 <= kFigureLimitTol;
      limits_ok = limits_ok && ok;
      limits += fmt(" theory(1e-3;m=%d,eps=%g)=%.6g", m, eps, t0);
    }
  }
  return {bad == 0 && limits_ok, fmt("%d/%d points with |z|>%g, max |z| = %.2f;", bad, points, kZMax, worst_z) + limits};
}

Outcome exactness() {
  oracle::Rng rng(3003);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto m = static_cast<std::size_t>(rng.integer(2, 40));
    const auto n = static_cast<std::size_t>(rng.integer(1, std::min(12, static_cast<int>(m) - 1)));
    const auto q = rng.orthonormal(m, n);
    const auto c = rng.vec(m, rng.log_uniform(0.1, 10.0));
    const double gamma = std::array{0.1, 1.0, 10.0}[t % 3];
    const double r = linalg::norm2(linalg::project_perp(q, c));
    const double formula = bounds::liesen_kappa_from_residual(linalg::norm2(c), gamma, r);
    const double direct = oracle::eigen_cond(linalg::append_column(q, c, gamma));
    worst = std::max(worst, std::abs(formula - direct) / direct);
  }
  return {worst <= kExactnessTol, fmt("max relative gap = %.3g over 200 instances (tol %.0e)", worst, kExactnessTol)};
}

Outcome identity() {
  oracle::Rng rng(4004);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto s = samplers::column_instance(rng, false);
    worst = std::max(worst, bounds::liesen_residual_identity_check(s.b, s.c, s.gamma).max_discrepancy);
  }
  return {worst <= kIdentityTol, fmt("max pairwise discrepancy = %.3g over 100 instances (tol %.0e)", worst, kIdentityTol)};
}

struct SweepTally {
  int valid = 0;
  int violations = 0;
  double worst_ratio = 0.0;  // max (actual / bound) for upper, (bound / actual) for lower

  void add(const bounds::BoundReport& r) {
    if (!r.preconditions_met || !r.actual_value) return;
    ++valid;
    violations += !r.holds();
    const double ratio = r.side == bounds::BoundSide::upper ? *r.actual_value / r.bound_value
                                                            : r.bound_value / *r.actual_value;
    worst_ratio = std::max(worst_ratio, ratio);
  }
};

Outcome sweeps() {
  oracle::Rng rng(5005);
  SweepTally general, eps, smax, smin, via_q, unit_cols, unit_q;
  const int cap = 100 * kSweepInstances;
  for (int a = 0; a < cap && (general.valid < kSweepInstances || eps.valid < kSweepInstances); ++a) {
    const auto s = samplers::split_instance(rng);
    if (general.valid < kSweepInstances) general.add(bounds::kappa_bound_general(s.b, s.x, s.y, s.gamma));
    if (eps.valid < kSweepInstances) eps.add(bounds::kappa_bound_eps(s.b, s.x, s.y, samplers::eps_for(s, rng)));
  }
  for (int a = 0; a < cap && (via_q.valid < kSweepInstances || smax.valid < kSweepInstances); ++a) {
    const auto s = samplers::column_instance(rng, false);
    const auto mm = bounds::minmax_singular_bounds(s.b, s.c, s.gamma);
    smax.add(mm.sigma_max_upper);
    smin.add(mm.sigma_min_lower);
    via_q.add(bounds::kappa_bound_via_q(s.b, s.c, s.gamma));
  }
  for (int a = 0; a < cap && (unit_cols.valid < kSweepInstances || unit_q.valid < kSweepInstances); ++a) {
    const auto s = samplers::column_instance(rng, true);
    unit_cols.add(bounds::kappa_bound_unit_columns(s.b, s.c, s.gamma));
    auto q = s.c;
    const double cn = linalg::norm2(q);
    for (auto& v : q) v /= cn;
    unit_q.add(bounds::kappa_bound_unit_q(s.b, q));
  }
  bool pass = true;
  std::string detail;
  for (const auto& [name, t] : {std::pair{"general", &general}, {"eps", &eps}, {"sigma_max", &smax},
                                {"sigma_min", &smin}, {"via_q", &via_q}, {"unit_columns", &unit_cols},
                                {"unit_q", &unit_q}}) {
    pass = pass && t->valid >= kSweepInstances && t->violations == 0;
    detail += fmt("%s %d/%d (worst ratio %.4g); ", name, t->violations, t->valid, t->worst_ratio);
  }
  detail.resize(detail.size() - 2);
  return {pass, "violations " + detail};
}

Outcome rank2() {
  oracle::Rng rng(6006);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int dim = rng.integer(2, 10);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    const double b = rng.normal();
    double a2 = 0.0;
    a(0, 0) = b;
    for (int i = 1; i < dim; ++i) {
      const double v = rng.normal();
      a(0, i) = a(i, 0) = v;
      a2 += v * v;
    }
    const auto e = bounds::rank2_eigenvalues(std::sqrt(a2), b);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();
    worst = std::max({worst, std::abs(ev[0] - e[2]), std::abs(ev[dim - 1] - e[1])});
    for (int i = 1; i < dim - 1; ++i) worst = std::max(worst, std::abs(ev[i]));
  }
  return {worst <= kEigenTol, fmt("max |eig gap| = %.3g over 100 matrices (tol %.0e)", worst, kEigenTol)};
}

Outcome projection() {
  sim::ExperimentConfig cfg{.m = 20, .n = 5, .sigma = 0.1, .x_norm = 0.3, .eps = 0.5, .trials = 100'000, .seed = 7,
                            .workers = workers()};
  const auto r = sim::projection_noise_experiment(cfg);
  const bool pass = r.covariance_ok && r.max_deviation <= r.tolerance && std::abs(r.tail.z_score) <= kZMax;
  return {pass, fmt("covariance max deviation %.3g (tol %.3g), tail empirical %.5f theory %.5f z %.2f", r.max_deviation,
                    r.tolerance, r.tail.empirical_prob, r.tail.theory_prob, r.tail.z_score)};
}

Outcome arbitration() {
  sim::ExperimentConfig cfg{.m = 30, .n = 5, .sigma = 0.05, .x_norm = 1.0, .eps1 = 0.2, .eps2 = 1.0,
                            .trials = 100'000, .seed = 8, .workers = workers()};
  const auto s = sim::ls_residual_experiment(cfg);
  const auto printed =
      sim::with_theory(s, bounds::residual_tail_prob_unsquared(30, 5, 1.0, 0.05, 0.2, 1.0).value);
  return {std::abs(s.z_score) <= kZMax,
          fmt("empirical %.5f; squared-argument theory %.5f z %.2f; unsquared-argument theory %.5f z %.1f",
              s.empirical_prob, s.theory_prob, s.z_score, printed.theory_prob, printed.z_score)};
}

Outcome noisy_qr() {
  sim::ExperimentConfig cfg{.m = 100, .n = 5, .sigma = 1e-3, .eps1 = 0.05, .eps2 = 1.0, .trials = 10'000, .seed = 9,
                            .workers = workers()};
  const auto r = sim::noisy_qr_experiment(cfg);
  const double allowance = 1.0 - r.chain.probability_lower_bound + kViolationStdErrs * r.violations.std_error;
  auto exact_cfg = cfg;
  exact_cfg.sigma = 0.0;
  const auto e = sim::noisy_qr_experiment(exact_cfg);
  const bool pass = r.violations.empirical_prob <= allowance && r.excluded == 0 && e.max_kappa_minus_one <= kNoiselessKappaTol &&
                    e.trials_run == exact_cfg.trials && e.trajectories_ok && r.trajectories_ok;
  return {pass, fmt("violation rate %.4g <= allowance %.4g (product %.4f, max kappa %.6f, excluded %ld); "
                    "sigma=0 max |kappa-1| = %.3g",
                    r.violations.empirical_prob, allowance, r.chain.kappa_product_bound, r.max_kappa, r.excluded,
                    e.max_kappa_minus_one)};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"sim-norm-tail", "--m", "50", "--x-norm", "1", "--eps", "0.9", "--sigma-grid", "1e-3:1:20", "--trials",
       "100000", "--seed", "7"},
      {"sim-projection", "--trials", "50000", "--seed", "3"},
      {"sim-ls", "--trials", "50000", "--seed", "4"},
      {"sim-qr-noise", "--trials", "5000", "--seed", "5"},
  };
  int identical = 0;
  std::string failed;
  for (const auto& base : commands) {
    std::vector<std::string> outputs;
    for (const char* w : {"1", "1", "8"}) {
      auto args = base;
      args.insert(args.end(), {"--workers", w});
      std::ostringstream out, err;
      if (cli::run(args, out, err) != 0) outputs.push_back("exit!=0: " + err.str());
      else outputs.push_back(out.str());
    }
    const bool same = outputs[0] == outputs[1] && outputs[0] == outputs[2] && outputs[0].rfind("exit", 0) != 0;
    identical += same;
    if (!same) failed += " " + base[0];
  }
  return {identical == static_cast<int>(commands.size()),
          fmt("%d/%zu subcommands byte-identical across reruns and workers 1 vs 8", identical, commands.size()) +
              (failed.empty() ? "" : "; differs:" + failed)};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> criteria{
      {1, "Marcum/chi-square duality", 10, duality},
      {2, "norm tail law across sigma (figure data)", 120, figures},
      {3, "residual formula exactness", 30, exactness},
      {4, "residual triple identity", 0, identity},
      {5, "bound inequality sweeps", 120, sweeps},
      {6, "rank-2 eigenvalues vs eigensolver", 0, rank2},
      {7, "projected noise law", 0, projection},
      {8, "noisy least-squares residual law", 0, arbitration},
      {9, "noisy QR chain bound", 180, noisy_qr},
      {10, "determinism", 0, determinism},
  };
  bool all = true;
  bool ran = false;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += fmt("; runtime %.1fs exceeds %.0fs", secs, c.time_limit_s);
    }
    std::printf("%s criterion %d: %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all ? 0 : 1;
}
