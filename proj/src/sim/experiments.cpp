#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "blocks.hpp"
#include "condgrowth/sim.hpp"
#include "condgrowth/specfun.hpp"

namespace condgrowth::sim {

using linalg::DenseMatrix;
using linalg::Vector;

namespace {

void require(bool ok, const char* fn, const std::string& what) {
  if (!ok) throw std::invalid_argument(std::string(fn) + ": " + what);
}

void check_common(const ExperimentConfig& cfg, const char* fn, bool allow_zero_sigma = false) {
  require(cfg.trials >= 1, fn, "trials must be >= 1");
  require(cfg.workers >= 1, fn, "workers must be >= 1");
  require(cfg.m >= 1, fn, "m must be >= 1");
  require(std::isfinite(cfg.sigma) && (allow_zero_sigma ? cfg.sigma >= 0.0 : cfg.sigma > 0.0), fn,
          allow_zero_sigma ? "sigma must be >= 0" : "sigma must be > 0");
  require(std::isfinite(cfg.x_norm) && cfg.x_norm >= 0.0, fn, "x_norm must be >= 0");
}

double spectral_cond(const DenseMatrix& a) {
  const auto sv = linalg::singular_values(a);
  return sv.min() > 0.0 ? sv.max() / sv.min() : HUGE_VAL;
}

}  // namespace

TrialSummary summarize(long events, long trials, double theory_prob) {
  TrialSummary s;
  s.trials = trials;
  s.events = events;
  s.theory_prob = theory_prob;
  if (trials <= 0) return s;
  const double t = static_cast<double>(trials);
  s.empirical_prob = static_cast<double>(events) / t;
  s.std_error = std::max(std::sqrt(theory_prob * (1.0 - theory_prob) / t), 1.0 / t);
  s.z_score = (s.empirical_prob - theory_prob) / s.std_error;
  return s;
}

TrialSummary with_theory(const TrialSummary& s, double theory_prob) {
  return summarize(s.events, s.trials, theory_prob);
}

TrialSummary norm_tail_experiment(const ExperimentConfig& cfg) {
  check_common(cfg, "norm_tail_experiment");
  require(std::isfinite(cfg.eps) && cfg.eps >= 0.0, "norm_tail_experiment", "eps must be >= 0");
  const double eps2 = cfg.eps * cfg.eps;
  const auto counts = detail::run_blocks<long>(
      cfg.trials, cfg.workers, cfg.seed, detail::kNormTail, [&](RandomStream& rng, long, long count) {
        long events = 0;
        for (long t = 0; t < count; ++t) {
          const double first = cfg.x_norm + cfg.sigma * rng.normal();
          double ss = first * first;
          for (int i = 1; i < cfg.m; ++i) {
            const double y = cfg.sigma * rng.normal();
            ss += y * y;
          }
          if (ss > eps2) ++events;
        }
        return events;
      });
  long events = 0;
  for (long c : counts) events += c;
  const double theory = specfun::norm_tail_prob(cfg.x_norm, cfg.sigma, cfg.eps, cfg.m).value;
  return summarize(events, cfg.trials, theory);
}

std::vector<SweepPoint> norm_tail_sweep(const ExperimentConfig& cfg, std::span<const double> sigmas) {
  std::vector<SweepPoint> out;
  out.reserve(sigmas.size());
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    ExperimentConfig point = cfg;
    point.sigma = sigmas[k];
    point.seed = derive_seed(cfg.seed, detail::kSweep, k);
    out.push_back({sigmas[k], norm_tail_experiment(point)});
  }
  return out;
}

std::vector<double> log_grid(double start, double stop, int count) {
  require(start > 0.0 && stop > 0.0 && std::isfinite(start) && std::isfinite(stop), "log_grid",
          "endpoints must be finite and > 0");
  require(count >= 1, "log_grid", "count must be >= 1");
  if (count == 1) return {start};
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double l0 = std::log10(start), l1 = std::log10(stop);
  for (int k = 0; k < count; ++k) grid[k] = std::pow(10.0, l0 + (l1 - l0) * k / (count - 1));
  grid.front() = start;
  grid.back() = stop;
  return grid;
}

ProjectionReport projection_noise_experiment(const ExperimentConfig& cfg) {
  const char* fn = "projection_noise_experiment";
  check_common(cfg, fn);
  require(cfg.n >= 0 && cfg.n < cfg.m, fn, "need 0 <= n < m");
  require(std::isfinite(cfg.eps) && cfg.eps >= 0.0, fn, "eps must be >= 0");

  const auto m = static_cast<std::size_t>(cfg.m);
  const auto k = static_cast<std::size_t>(cfg.m - cfg.n);
  RandomStream basis_rng(derive_seed(cfg.seed, detail::kProjectionBasis, 0));
  const DenseMatrix q = random_orthonormal(m, static_cast<std::size_t>(cfg.n), basis_rng);
  const DenseMatrix q_perp = linalg::orthonormal_complement(q);
  Vector x(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) x[i] = cfg.x_norm * q_perp(i, 0);

  struct Block {
    std::vector<double> moments;  // k×k, column-major
    long events = 0;
  };
  const auto blocks = detail::run_blocks<Block>(
      cfg.trials, cfg.workers, cfg.seed, detail::kProjection, [&](RandomStream& rng, long, long count) {
        Block b;
        b.moments.assign(k * k, 0.0);
        for (long t = 0; t < count; ++t) {
          const Vector y = gaussian_vector(cfg.m, cfg.sigma, rng);
          const Vector ybar = linalg::transpose_times(q_perp, y);
          for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < k; ++i) b.moments[j * k + i] += ybar[i] * ybar[j];
          }
          Vector s = q_perp * ybar;  // P⊥Y
          for (std::size_t i = 0; i < m; ++i) s[i] += x[i];
          if (linalg::norm2(s) > cfg.eps) ++b.events;
        }
        return b;
      });

  std::vector<double> total(k * k, 0.0);
  long events = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += b.moments[i];
    events += b.events;
  }
  const double t = static_cast<double>(cfg.trials);
  const double s2 = cfg.sigma * cfg.sigma;
  ProjectionReport rep;
  for (auto& v : total) v /= t;
  rep.covariance = DenseMatrix(k, k, std::move(total));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.covariance(i, j) - (i == j ? s2 : 0.0)));
    }
  }
  rep.tolerance = 5.0 * s2 / std::sqrt(t);
  rep.covariance_ok = rep.max_deviation <= rep.tolerance;
  const double theory = specfun::norm_tail_prob(cfg.x_norm, cfg.sigma, cfg.eps, cfg.m - cfg.n).value;
  rep.tail = summarize(events, cfg.trials, theory);
  return rep;
}

TrialSummary ls_residual_experiment(const ExperimentConfig& cfg) {
  const char* fn = "ls_residual_experiment";
  check_common(cfg, fn);
  require(cfg.n >= 1 && cfg.n < cfg.m, fn, "need 1 <= n < m");
  const double threshold = bounds::residual_threshold(cfg.eps1, cfg.eps2);
  const auto m = static_cast<std::size_t>(cfg.m);
  const auto n = static_cast<std::size_t>(cfg.n);

  const auto counts = detail::run_blocks<long>(
      cfg.trials, cfg.workers, cfg.seed, detail::kLsResidual, [&](RandomStream& rng, long, long count) {
        long events = 0;
        for (long t = 0; t < count; ++t) {
          const DenseMatrix q = linalg::householder_qr(gaussian_matrix(m, n, rng)).q;
          const DenseMatrix q_perp = linalg::orthonormal_complement(q);
          const Vector y = gaussian_vector(cfg.m, cfg.sigma, rng);
          Vector s(m);
          for (std::size_t i = 0; i < m; ++i) s[i] = cfg.x_norm * q_perp(i, 0) + y[i];
          const double perp = linalg::norm2(linalg::project_perp(q, s));
          const double along = linalg::norm2(linalg::project_onto(q, y));
          const double r = perp / std::hypot(perp, along);
          if (r >= threshold) ++events;
        }
        return events;
      });
  long events = 0;
  for (long c : counts) events += c;
  const double theory = bounds::residual_tail_prob(cfg.m, cfg.n, cfg.x_norm, cfg.sigma, cfg.eps1, cfg.eps2).value;
  return summarize(events, cfg.trials, theory);
}

NoisyQrReport noisy_qr_experiment(const ExperimentConfig& cfg, const DenseMatrix& input) {
  const char* fn = "noisy_qr_experiment";
  ExperimentConfig c = cfg;
  c.m = static_cast<int>(input.rows());
  c.n = static_cast<int>(input.cols());
  check_common(c, fn, true);
  require(c.n >= 1 && c.n <= c.m, fn, "input must be m×n with 1 <= n <= m");

  const auto m = input.rows();
  const auto n = input.cols();
  const DenseMatrix r = linalg::householder_qr(input).r;
  Vector a_norms, eps1(n - 1, c.eps1), eps2(n - 1, c.eps2);
  for (std::size_t i = 1; i < n; ++i) a_norms.push_back(std::abs(r(i, i)));

  NoisyQrReport rep;
  rep.chain = bounds::qr_chain_bound(c.m, c.n, a_norms, c.sigma, eps1, eps2);
  const double limit = rep.chain.kappa_product_bound * (1.0 + bounds::kBoundSlack);

  struct Block {
    long run = 0, excluded = 0, violations = 0;
    double max_kappa = 0.0, max_dev = 0.0;
    bool trajectories_ok = true;
  };
  const auto blocks = detail::run_blocks<Block>(
      c.trials, c.workers, c.seed, detail::kNoisyQr, [&](RandomStream& rng, long, long count) {
        Block b;
        for (long t = 0; t < count; ++t) {
          std::vector<Vector> cols;
          bool excluded = false;
          double kappa = 1.0;
          for (std::size_t i = 0; i < n && !excluded; ++i) {
            const auto v = input.col(i);
            Vector a(v.begin(), v.end());
            if (i > 0) {
              try {
                a = linalg::project_perp(linalg::householder_qr(DenseMatrix::from_columns(cols)).q, v);
              } catch (const linalg::RankDeficientError&) {
                excluded = true;
                break;
              }
            }
            const Vector e = gaussian_vector(c.m, c.sigma, rng);
            if (linalg::norm2(a) <= 1e-12 * linalg::norm2(v)) {
              excluded = true;
              break;
            }
            for (std::size_t k = 0; k < m; ++k) a[k] += e[k];
            const double nrm = linalg::norm2(a);
            for (auto& x : a) x /= nrm;
            cols.push_back(std::move(a));
            kappa = spectral_cond(DenseMatrix::from_columns(cols));
            if (kappa < 1.0 - 1e-12 || (i == 0 && std::abs(kappa - 1.0) > 1e-12)) b.trajectories_ok = false;
          }
          if (excluded) {
            ++b.excluded;
            continue;
          }
          ++b.run;
          if (kappa > limit) ++b.violations;
          b.max_kappa = std::max(b.max_kappa, kappa);
          b.max_dev = std::max(b.max_dev, std::abs(kappa - 1.0));
        }
        return b;
      });

  long violations = 0;
  for (const auto& b : blocks) {
    rep.trials_run += b.run;
    rep.excluded += b.excluded;
    violations += b.violations;
    rep.max_kappa = std::max(rep.max_kappa, b.max_kappa);
    rep.max_kappa_minus_one = std::max(rep.max_kappa_minus_one, b.max_dev);
    rep.trajectories_ok = rep.trajectories_ok && b.trajectories_ok;
  }
  rep.violations = summarize(violations, rep.trials_run, 1.0 - rep.chain.probability_lower_bound);
  return rep;
}

NoisyQrReport noisy_qr_experiment(const ExperimentConfig& cfg) {
  require(cfg.n >= 1 && cfg.n <= cfg.m, "noisy_qr_experiment", "need 1 <= n <= m");
  return noisy_qr_experiment(cfg, DenseMatrix::identity(static_cast<std::size_t>(cfg.m))
                                      .leading_columns(static_cast<std::size_t>(cfg.n)));
}

}  // namespace condgrowth::sim
