#include "condgrowth/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <boost/math/special_functions/gamma.hpp>

namespace condgrowth::specfun {

namespace {

constexpr double kSeriesTol = 1e-17;

void check_args(double nu, double t) {
  if (!(std::isfinite(nu) && nu >= 0.0)) throw DomainError("bessel_i: nu must be finite and >= 0");
  if (!(std::isfinite(t) && t >= 0.0)) throw DomainError("bessel_i: t must be finite and >= 0");
}

// Large-argument expansion of e^{-t} I_ν(t) (the exponentially small companion
// term is below double resolution once t > 25). Returns nothing when the
// asymptotic terms stop shrinking before reaching the tolerance.
std::optional<double> log_hankel(double nu, double t) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * t);
    if (next == 0.0) return t - 0.5 * std::log(2.0 * std::numbers::pi * t) + std::log(sum);
    if (std::abs(next) > std::abs(term)) return std::nullopt;
    sum += next;
    term = next;
    if (std::abs(term) < kSeriesTol * std::abs(sum)) {
      return t - 0.5 * std::log(2.0 * std::numbers::pi * t) + std::log(sum);
    }
  }
  return std::nullopt;
}

// Power series Σ (t/2)^{2n+ν} / (n! Γ(n+ν+1)), summed outward from its largest
// term so that neither under- nor overflow occurs.
double log_power_series(double nu, double t) {
  const double half = 0.5 * t;
  const double half_sq = half * half;
  const double peak_real = 0.5 * (-nu + std::sqrt(nu * nu + 4.0 * half_sq));
  const double peak = std::floor(std::max(0.0, peak_real));

  const double log_peak_term = (2.0 * peak + nu) * std::log(half) - boost::math::lgamma(peak + 1.0) -
                               boost::math::lgamma(peak + nu + 1.0);

  double sum = 1.0;
  double rel = 1.0;
  for (double n = peak;; n += 1.0) {
    rel *= half_sq / ((n + 1.0) * (n + nu + 1.0));
    sum += rel;
    if (rel < kSeriesTol * sum) break;
  }
  rel = 1.0;
  for (double n = peak; n > 0.0; n -= 1.0) {
    rel *= n * (n + nu) / half_sq;
    sum += rel;
    if (rel < kSeriesTol * sum) break;
  }
  return log_peak_term + std::log(sum);
}

}  // namespace

double log_bessel_i(double nu, double t) {
  check_args(nu, t);
  if (t == 0.0) return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (t > 25.0 && 4.0 * nu * nu < t) {
    if (auto v = log_hankel(nu, t)) return *v;
  }
  return log_power_series(nu, t);
}

double bessel_i_scaled(double nu, double t) {
  const double log_value = log_bessel_i(nu, t);
  return std::exp(log_value - t);
}

double bessel_i(double nu, double t) {
  const double log_value = log_bessel_i(nu, t);
  if (log_value > std::log(std::numeric_limits<double>::max())) {
    throw OverflowError("bessel_i: I_nu(t) exceeds the double range; use bessel_i_scaled");
  }
  return std::exp(log_value);
}

}  // namespace condgrowth::specfun
