#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "condgrowth/linalg.hpp"
#include "condgrowth/specfun.hpp"

namespace condgrowth::bounds {

using linalg::DenseMatrix;

/// Relative slack used when comparing an actual value against its bound.
inline constexpr double kBoundSlack = 1e-9;

/// Scalar inputs a bound was evaluated from. Only the fields a bound uses are set.
struct BoundInputs {
  std::optional<double> sigma_max;
  std::optional<double> sigma_min;
  std::optional<double> gamma;
  std::optional<double> sum_norm;  ///< ||x + y||
  std::optional<double> bty_norm;  ///< ||Bᵀy||
  std::optional<double> c_norm;
  std::optional<double> r_norm;
  std::optional<double> eps;
};

enum class BoundSide { upper, lower };

struct BoundReport {
  std::string name;
  BoundSide side = BoundSide::upper;
  /// +inf when the formula has no finite value (pole or non-positive denominator).
  double bound_value = 0.0;
  std::optional<double> actual_value;
  BoundInputs inputs;
  bool preconditions_met = false;
  std::string explanation;

  /// True unless preconditions hold, the actual value is known, and it lies
  /// on the wrong side of the bound by more than kBoundSlack (relative).
  bool holds() const;
};

/// CSV header matching to_csv_row.
std::string bound_report_csv_header();
std::string to_csv_row(const BoundReport& report);
void write_text(std::ostream& out, const BoundReport& report);

/// Eigenvalues {0, (b + √(b²+4a²))/2, (b - √(b²+4a²))/2} of [[0, aᵀ], [a, b]]
/// given a_norm = ||a||. Evaluated without cancellation.
std::array<double, 3> rank2_eigenvalues(double a_norm, double b);

/// κ([B, γ(x+y)]) upper bound for x ⊥ span(B).
BoundReport kappa_bound_general(const DenseMatrix& b, std::span<const double> x, std::span<const double> y,
                                double gamma);
/// Same bound from precomputed scalars; no actual value.
BoundReport kappa_bound_general(double sigma_max, double sigma_min, double sum_norm, double bty_norm, double gamma);

/// κ([B, (x+y)/||x+y||]) ≤ κ(B)·√(1 + f(B, ε)) under √(1 + 4||Bᵀy||²/||x+y||²) ≤ ε.
BoundReport kappa_bound_eps(const DenseMatrix& b, std::span<const double> x, std::span<const double> y, double eps);
BoundReport kappa_bound_eps(double sigma_max, double sigma_min, double sum_norm, double bty_norm, double eps);

/// f(B, ε) from σ_max, σ_min.
double eps_growth_term(double sigma_max, double sigma_min, double eps);

/// κ([Q, cγ]) = (α + √(α² - 4γ²||r||²)) / (2γ||r||), α = 1 + γ²||c||². Exact for orthonormal Q.
double liesen_kappa_from_residual(double c_norm, double gamma, double r_norm);
/// Inverse map: ||r|| = (α/γ)·κ/(κ² + 1).
double liesen_residual_from_kappa(double c_norm, double gamma, double kappa);

/// ||r|| computed from the least-squares solve, from the singular-value
/// product over [B, cγ] and B, and from σ_min·σ_1 of [Q, cγ].
struct ResidualIdentityCheck {
  double direct = 0.0;
  double singular_product = 0.0;
  double orthonormal_product = 0.0;
  double max_discrepancy = 0.0;  ///< max pairwise relative difference
};

ResidualIdentityCheck liesen_residual_identity_check(const DenseMatrix& b, std::span<const double> c, double gamma);

struct MinMaxSingularReports {
  BoundReport sigma_max_upper;  ///< σ_max([B,cγ]) ≤ max{σ_max(B), γ}·σ_max([Q,c])
  BoundReport sigma_min_lower;  ///< σ_min([B,cγ]) ≥ min{σ_min(B), γ}·σ_min([Q,c])
};

MinMaxSingularReports minmax_singular_bounds(const DenseMatrix& b, std::span<const double> c, double gamma);

/// κ([B,cγ]) ≤ max{κ(B), ||B||/γ, γ||B⁺||}·κ([Q,c]).
BoundReport kappa_bound_via_q(const DenseMatrix& b, std::span<const double> c, double gamma);

/// For unit-norm columns: κ([B,cγ]) ≤ κ(B)·(α + √(α² - 4γ²||r||²)) / (2γ||r||),
/// where r is the least-squares residual of c against B.
BoundReport kappa_bound_unit_columns(const DenseMatrix& b, std::span<const double> c, double gamma);
BoundReport kappa_bound_unit_columns(double kappa_b, double c_norm, double r_norm, double gamma);

/// γ = 1, ||q|| = 1 case: κ([B,q]) ≤ κ(B)·(1 + √(1 - ||r||²)) / ||r||.
BoundReport kappa_bound_unit_q(const DenseMatrix& b, std::span<const double> q);
BoundReport kappa_bound_unit_q(double kappa_b, double r_norm);

/// (1 + √(1 - r²)) / r, the growth factor for a unit column with residual r.
double unit_residual_factor(double r_norm);

/// Residual threshold 1/√(1 + (ε₁/ε₂)²).
double residual_threshold(double eps1, double eps2);

/// P(||r|| ≥ 1/√(1 + (ε₁/ε₂)²)) for the noisy least-squares residual, i.e. the
/// noncentral-F survival function F'_{m-n,n} at n·ε₂²/((m-n)·ε₁²) with
/// noncentrality ||X||²/σ².
specfun::TailProbability residual_tail_prob(int m, int n, double x_norm, double sigma, double eps1, double eps2);

/// Same probability with the unsquared argument n·ε₂/((m-n)·ε₁); kept for
/// side-by-side comparison.
specfun::TailProbability residual_tail_prob_unsquared(int m, int n, double x_norm, double sigma, double eps1,
                                                      double eps2);

/// g(ε₁, ε₂) = ε₁/ε₂ + √(1 + (ε₁/ε₂)²): the unit-column factor evaluated at the residual threshold.
double growth_factor(double eps1, double eps2);

/// The printed prefactor ε₁·√(1 + (ε₁/ε₂)²); kept for side-by-side comparison.
double growth_factor_printed(double eps1, double eps2);

struct KappaGrowth {
  double kappa_bound = 0.0;
  specfun::TailProbability probability;
};

/// κ([B,q]) ≤ κ(B)·g(ε₁,ε₂) with at least the returned probability.
KappaGrowth kappa_growth_prob(const DenseMatrix& b, double x_norm, double sigma, double eps1, double eps2);

struct ChainBoundReport {
  std::vector<double> per_step_factors;     ///< steps i = 2..n
  std::vector<double> step_probabilities;   ///< P(step i stays within its factor)
  double kappa_product_bound = 1.0;
  double probability_lower_bound = 1.0;     ///< max(0, 1 - Σ(1 - p_i))
};

/// Union bound over the steps of a QR loop whose orthogonalization is noisy.
/// a_norms, eps1, eps2 have length n-1 (entries for i = 2..n). Step i appends
/// to a block of i-1 columns, so its probability is residual_tail_prob(m, i-1, ...).
/// σ = 0 is the noise-free limit (all step probabilities 1).
ChainBoundReport qr_chain_bound(int m, int n, std::span<const double> a_norms, double sigma,
                                std::span<const double> eps1, std::span<const double> eps2);

}  // namespace condgrowth::bounds
