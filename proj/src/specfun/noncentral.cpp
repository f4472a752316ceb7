#include "condgrowth/specfun.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace condgrowth::specfun {

namespace {

void require(bool ok, const char* fn, const std::string& what) {
  if (!ok) throw DomainError(std::string(fn) + ": " + what);
}

// Central component of a Poisson mixture: the j-th component has shape a0 + j.
// lower(j) - lower(j+1) = upper(j+1) - upper(j) = d(j) >= 0.
struct GammaFamily {
  double a0;
  double z;  // x / 2

  double lower(double a) const { return regularized_lower_gamma(a, z); }
  double upper(double a) const { return regularized_upper_gamma(a, z); }
  // z^a e^{-z} / Γ(a+1). The direct value keeps full relative accuracy when
  // a and z are large; the log form is only used once it underflows.
  double log_step(double a) const {
    const double d = boost::math::gamma_p_derivative(a + 1.0, z);
    if (d > 0.0) return std::log(d);
    return a * std::log(z) - z - boost::math::lgamma(a + 1.0);
  }
  double log_step_ratio(double a) const { return std::log(z) - std::log(a + 1.0); }
};

struct BetaFamily {
  double a0;
  double b;
  double y;      // x d1 / (x d1 + d2)
  double y_rem;  // 1 - y, formed without cancellation

  double lower(double a) const { return regularized_incomplete_beta(a, b, y); }
  double upper(double a) const { return regularized_incomplete_beta(b, a, y_rem); }
  // y^a (1-y)^b Γ(a+b) / (Γ(a+1) Γ(b)).
  double log_step(double a) const {
    const double d = boost::math::ibeta_derivative(a, b, y) * y * y_rem / a;
    if (d > 0.0 && std::isfinite(d)) return std::log(d);
    return a * std::log(y) + b * std::log(y_rem) + boost::math::lgamma(a + b) -
           boost::math::lgamma(a + 1.0) - boost::math::lgamma(b);
  }
  double log_step_ratio(double a) const { return std::log(y) + std::log(a + b) - std::log(a + 1.0); }
};

struct MixtureSum {
  double cdf = 0.0;
  double sf = 0.0;
  double truncation = 0.0;
  long terms = 0;

  TailProbability as_cdf() const { return {std::clamp(cdf, 0.0, 1.0), error_bound()}; }
  TailProbability as_sf() const { return {std::clamp(sf, 0.0, 1.0), error_bound()}; }
  double error_bound() const { return truncation + static_cast<double>(terms + 8) * DBL_EPSILON; }
};

// Σ_j Pois(j; λ/2) · component(j), summed outward from the Poisson mode. Each
// direction stops once the Poisson mass it has not visited is below half the
// tolerance; that mass bounds the omitted contribution because every
// component lies in [0, 1].
template <class Family>
MixtureSum poisson_mixture(double lambda, const Family& fam, const SeriesSettings& settings) {
  MixtureSum out;
  const double half_lambda = 0.5 * lambda;
  if (half_lambda == 0.0) {
    out.cdf = fam.lower(fam.a0);
    out.sf = fam.upper(fam.a0);
    out.terms = 1;
    return out;
  }
  require(half_lambda < 1e17, "poisson_mixture", "noncentrality too large");

  const double mode = std::floor(half_lambda);
  const double log_half_lambda = std::log(half_lambda);
  // Poisson weight at the mode, evaluated without the large cancelling logs.
  const double log_w_mode = std::log(boost::math::gamma_p_derivative(mode + 1.0, half_lambda));
  const double a_mode = fam.a0 + mode;
  const double lower_mode = fam.lower(a_mode);
  const double upper_mode = fam.upper(a_mode);
  const double log_d_mode = fam.log_step(a_mode);

  double w = std::exp(log_w_mode);
  out.cdf = w * lower_mode;
  out.sf = w * upper_mode;
  out.terms = 1;
  const double half_tol = 0.5 * settings.tail_tolerance;

  // Upward: j = mode + 1, mode + 2, ...
  double tail_up = 0.0;
  {
    double lo = lower_mode, up = upper_mode, log_d = log_d_mode, log_w = log_w_mode;
    for (double j = mode + 1.0;; j += 1.0) {
      const double d = std::exp(log_d);
      lo = std::max(0.0, lo - d);
      up = std::min(1.0, up + d);
      log_d += fam.log_step_ratio(fam.a0 + j - 1.0);
      log_w += log_half_lambda - std::log(j);
      w = std::exp(log_w);
      out.cdf += w * lo;
      out.sf += w * up;
      ++out.terms;
      const double rho = half_lambda / (j + 1.0);
      tail_up = w * rho / (1.0 - rho);
      if (tail_up < half_tol || out.terms >= settings.max_terms) break;
    }
  }

  // Downward: j = mode - 1, ..., 0.
  double tail_down = 0.0;
  {
    double lo = lower_mode, up = upper_mode, log_d = log_d_mode, log_w = log_w_mode;
    for (double j = mode - 1.0; j >= 0.0; j -= 1.0) {
      log_d -= fam.log_step_ratio(fam.a0 + j);
      const double d = std::exp(log_d);
      lo = std::min(1.0, lo + d);
      up = std::max(0.0, up - d);
      log_w += std::log(j + 1.0) - log_half_lambda;
      w = std::exp(log_w);
      out.cdf += w * lo;
      out.sf += w * up;
      ++out.terms;
      const double rho = j / half_lambda;
      tail_down = j == 0.0 ? 0.0 : w * rho / (1.0 - rho);
      if (tail_down < half_tol || out.terms >= settings.max_terms) break;
    }
  }
  out.truncation = tail_up + tail_down;
  return out;
}

MixtureSum chi2_mixture(double k, double lambda, double x, const SeriesSettings& settings, const char* fn) {
  require(std::isfinite(k) && k > 0.0, fn, "degrees of freedom must be finite and > 0");
  require(std::isfinite(lambda) && lambda >= 0.0, fn, "noncentrality must be finite and >= 0");
  require(!std::isnan(x) && x >= 0.0, fn, "x must be >= 0");
  if (x == 0.0) return {.cdf = 0.0, .sf = 1.0, .truncation = 0.0, .terms = 0};
  if (std::isinf(x)) return {.cdf = 1.0, .sf = 0.0, .truncation = 0.0, .terms = 0};
  return poisson_mixture(lambda, GammaFamily{0.5 * k, 0.5 * x}, settings);
}

}  // namespace

TailProbability noncentral_chi2_cdf(double k, double lambda, double x, const SeriesSettings& settings) {
  return chi2_mixture(k, lambda, x, settings, "noncentral_chi2_cdf").as_cdf();
}

TailProbability noncentral_chi2_sf(double k, double lambda, double x, const SeriesSettings& settings) {
  return chi2_mixture(k, lambda, x, settings, "noncentral_chi2_sf").as_sf();
}

TailProbability marcum_q(MarcumOrder order, double alpha, double beta, const SeriesSettings& settings) {
  require(std::isfinite(alpha) && alpha >= 0.0, "marcum_q", "alpha must be finite and >= 0");
  require(!std::isnan(beta) && beta >= 0.0, "marcum_q", "beta must be >= 0");
  if (beta == 0.0) return {1.0, 0.0};
  if (alpha == 0.0) {
    return {regularized_upper_gamma(order.value(), 0.5 * beta * beta), 8.0 * DBL_EPSILON};
  }
  return noncentral_chi2_sf(2.0 * order.value(), alpha * alpha, beta * beta, settings);
}

TailProbability noncentral_f_sf(double d1, double d2, double lambda, double x, const SeriesSettings& settings) {
  const char* fn = "noncentral_f_sf";
  require(std::isfinite(d1) && d1 > 0.0, fn, "d1 must be finite and > 0");
  require(std::isfinite(d2) && d2 > 0.0, fn, "d2 must be finite and > 0");
  require(std::isfinite(lambda) && lambda >= 0.0, fn, "noncentrality must be finite and >= 0");
  require(!std::isnan(x) && x >= 0.0, fn, "x must be >= 0");
  if (x == 0.0) return {1.0, 0.0};
  if (std::isinf(x)) return {0.0, 0.0};
  const double denom = x * d1 + d2;
  const BetaFamily fam{0.5 * d1, 0.5 * d2, x * d1 / denom, d2 / denom};
  return poisson_mixture(lambda, fam, settings).as_sf();
}

TailProbability norm_tail_prob(double x_norm, double sigma, double eps, int m, const SeriesSettings& settings) {
  const char* fn = "norm_tail_prob";
  require(std::isfinite(x_norm) && x_norm >= 0.0, fn, "x_norm must be finite and >= 0");
  require(std::isfinite(sigma) && sigma > 0.0, fn, "sigma must be finite and > 0");
  require(std::isfinite(eps) && eps >= 0.0, fn, "eps must be finite and >= 0");
  require(m >= 1, fn, "m must be >= 1");
  return marcum_q(MarcumOrder(0.5 * m), x_norm / sigma, eps / sigma, settings);
}

}  // namespace condgrowth::specfun
