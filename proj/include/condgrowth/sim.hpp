#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "condgrowth/bounds.hpp"
#include "condgrowth/linalg.hpp"
#include "condgrowth/random.hpp"

namespace condgrowth::sim {

struct ExperimentConfig {
  int m = 10;
  int n = 0;
  double sigma = 0.1;
  double x_norm = 1.0;
  double eps = 0.9;
  double eps1 = 0.05;
  double eps2 = 1.0;
  long trials = 10'000;
  std::uint64_t seed = 1;
  /// Worker threads. Output does not depend on this value.
  int workers = 1;
};

/// Empirical frequency against a theoretical probability.
struct TrialSummary {
  double empirical_prob = 0.0;
  double theory_prob = 0.0;
  /// √(p(1-p)/trials) at the theory value p, floored at 1/trials.
  double std_error = 0.0;
  double z_score = 0.0;
  long trials = 0;
  long events = 0;
};

TrialSummary summarize(long events, long trials, double theory_prob);
/// Same counts scored against another theoretical value.
TrialSummary with_theory(const TrialSummary& s, double theory_prob);

/// Trials are split into blocks of this size; block b draws from
/// derive_seed(seed, experiment tag, b).
inline constexpr long kBlockSize = 1024;

/// P(||X + Y|| > ε) with X = x_norm·e₁ and Y ~ N(0, σ²I_m).
TrialSummary norm_tail_experiment(const ExperimentConfig& cfg);

struct SweepPoint {
  double sigma = 0.0;
  TrialSummary summary;
};

/// One norm_tail_experiment per σ; point k uses seed derive_seed(cfg.seed, sweep tag, k).
std::vector<SweepPoint> norm_tail_sweep(const ExperimentConfig& cfg, std::span<const double> sigmas);

/// count points log-spaced over [start, stop], endpoints included.
std::vector<double> log_grid(double start, double stop, int count);

struct ProjectionReport {
  /// Second-moment matrix (1/T)·Σ ȲȲᵀ of Ȳ = (Q^⊥)ᵀY, (m-n)×(m-n).
  linalg::DenseMatrix covariance;
  double max_deviation = 0.0;  ///< max |Ĉ - σ²I|
  double tolerance = 0.0;      ///< 5σ²/√trials
  bool covariance_ok = false;
  /// P(||X + P⊥Y|| > ε) against the Marcum-Q value of order (m-n)/2.
  TrialSummary tail;
};

/// One random orthonormal Q (m×n, n may be 0), many noise vectors.
ProjectionReport projection_noise_experiment(const ExperimentConfig& cfg);

/// Event ||r|| ≥ 1/√(1 + (ε₁/ε₂)²) for the noisy least-squares residual,
/// scored against residual_tail_prob.
TrialSummary ls_residual_experiment(const ExperimentConfig& cfg);

struct NoisyQrReport {
  bounds::ChainBoundReport chain;
  long trials_run = 0;
  long excluded = 0;  ///< trials with a vanishing projected column
  /// Frequency of κ(Q̂) above the product bound, scored against 1 - probability_lower_bound.
  TrialSummary violations;
  double max_kappa = 0.0;
  double max_kappa_minus_one = 0.0;
  /// κ(Q̂[:,1:i]) ≥ 1 for every i and κ(q̂₁) = 1 in every trial.
  bool trajectories_ok = true;
};

/// Gram-Schmidt loop with noise added after each exact projection.
/// ‖a_i‖ for the chain bound is |R_ii| of the noiseless QR of the input.
NoisyQrReport noisy_qr_experiment(const ExperimentConfig& cfg, const linalg::DenseMatrix& input);
/// Same, with the first n columns of I_m as input.
NoisyQrReport noisy_qr_experiment(const ExperimentConfig& cfg);

std::string summary_csv_header();
std::string to_csv_row(const TrialSummary& s);

/// Columns: sigma,m,x_norm,eps, then summary_csv_header().
void write_sweep_csv(std::ostream& out, const ExperimentConfig& cfg, std::span<const SweepPoint> points);

}  // namespace condgrowth::sim
