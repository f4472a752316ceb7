#include "condgrowth/specfun.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace condgrowth::specfun {

namespace {

void require(bool ok, const char* fn, const std::string& what) {
  if (!ok) throw DomainError(std::string(fn) + ": " + what);
}

}  // namespace

MarcumOrder::MarcumOrder(double m_order) : m_order_(m_order) {
  require(std::isfinite(m_order) && m_order > 0.0, "MarcumOrder", "order must be finite and > 0");
}

double log_gamma(double x) {
  require(std::isfinite(x) && x > 0.0, "log_gamma", "x must be finite and > 0");
  return boost::math::lgamma(x);
}

double regularized_upper_gamma(double s, double x) {
  require(std::isfinite(s) && s > 0.0, "regularized_upper_gamma", "s must be finite and > 0");
  require(!std::isnan(x) && x >= 0.0, "regularized_upper_gamma", "x must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(s, x);
}

double regularized_lower_gamma(double s, double x) {
  require(std::isfinite(s) && s > 0.0, "regularized_lower_gamma", "s must be finite and > 0");
  require(!std::isnan(x) && x >= 0.0, "regularized_lower_gamma", "x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(s, x);
}

double regularized_incomplete_beta(double a, double b, double x) {
  require(std::isfinite(a) && a > 0.0, "regularized_incomplete_beta", "a must be finite and > 0");
  require(std::isfinite(b) && b > 0.0, "regularized_incomplete_beta", "b must be finite and > 0");
  require(x >= 0.0 && x <= 1.0, "regularized_incomplete_beta", "x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

}  // namespace condgrowth::specfun
