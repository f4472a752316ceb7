#pragma once

#include <stdexcept>
#include <string>

namespace condgrowth::specfun {

/// Raised for arguments outside a function's domain (negative order, x < 0, NaN, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an unscaled result is not representable as a double.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A probability together with the bound on the error of the series that produced it.
///
/// `abs_error_bound` is the certified truncation bound of the Poisson-mixture
/// series plus a rounding allowance proportional to the number of summed terms.
struct TailProbability {
  double value = 0.0;
  double abs_error_bound = 0.0;
};

/// Order M > 0 of the generalized Marcum-Q function. Half-integers are common.
class MarcumOrder {
 public:
  explicit MarcumOrder(double m_order);
  double value() const noexcept { return m_order_; }

 private:
  double m_order_;
};

/// Series controls shared by every Poisson-mixture evaluation.
struct SeriesSettings {
  double tail_tolerance = 1e-14;
  long max_terms = 1'000'000;
};

double log_gamma(double x);

/// Q(s, x) = Γ(s, x) / Γ(s).
double regularized_upper_gamma(double s, double x);

/// P(s, x) = 1 - Q(s, x), computed without cancellation.
double regularized_lower_gamma(double s, double x);

/// I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

/// Modified Bessel function of the first kind I_ν(t), ν ≥ 0, t ≥ 0.
/// Throws OverflowError when the value exceeds the double range; use
/// bessel_i_scaled or log_bessel_i there.
double bessel_i(double nu, double t);

/// e^{-t} I_ν(t).
double bessel_i_scaled(double nu, double t);

/// ln I_ν(t); -inf when the value is exactly zero (ν > 0, t = 0).
double log_bessel_i(double nu, double t);

/// Generalized Marcum-Q function Q_M(α, β).
///
/// For α > 0 this is the survival function of a noncentral χ² with 2M degrees
/// of freedom and noncentrality α², evaluated at β². For α = 0 the value is
/// Q(M, β²/2), which is the α → 0 limit of the defining integral.
TailProbability marcum_q(MarcumOrder order, double alpha, double beta,
                         const SeriesSettings& settings = {});

/// P(χ'²_k(λ) ≤ x).
TailProbability noncentral_chi2_cdf(double k, double lambda, double x,
                                    const SeriesSettings& settings = {});

/// P(χ'²_k(λ) > x), summed directly rather than as 1 - cdf.
TailProbability noncentral_chi2_sf(double k, double lambda, double x,
                                   const SeriesSettings& settings = {});

/// P(W ≥ x) for W = (U/d1) / (V/d2), U ~ χ'²_{d1}(λ) independent of V ~ χ²_{d2}.
TailProbability noncentral_f_sf(double d1, double d2, double lambda, double x,
                                const SeriesSettings& settings = {});

/// P(||X + Y|| > ε) for Y ~ N(0, σ² I_m) and ||X|| = x_norm.
TailProbability norm_tail_prob(double x_norm, double sigma, double eps, int m,
                               const SeriesSettings& settings = {});

}  // namespace condgrowth::specfun
