#include <algorithm>
#include <cmath>

#include "condgrowth/bounds.hpp"

namespace condgrowth::bounds {

namespace {

void check_tail_args(int m, int n, double x_norm, double sigma, double eps1, double eps2, const char* fn) {
  if (n < 1 || m <= n) throw specfun::DomainError(std::string(fn) + ": need m > n >= 1");
  if (!(sigma > 0.0)) throw specfun::DomainError(std::string(fn) + ": sigma must be > 0");
  if (!(eps1 > 0.0 && eps2 > 0.0)) throw specfun::DomainError(std::string(fn) + ": eps1, eps2 must be > 0");
  if (!(x_norm >= 0.0) || std::isinf(x_norm)) throw specfun::DomainError(std::string(fn) + ": x_norm must be finite and >= 0");
}

}  // namespace

double residual_threshold(double eps1, double eps2) {
  if (!(eps1 > 0.0 && eps2 > 0.0)) throw specfun::DomainError("residual_threshold: eps1, eps2 must be > 0");
  return 1.0 / std::hypot(1.0, eps1 / eps2);
}

specfun::TailProbability residual_tail_prob(int m, int n, double x_norm, double sigma, double eps1, double eps2) {
  check_tail_args(m, n, x_norm, sigma, eps1, eps2, "residual_tail_prob");
  const double ratio = eps2 / eps1;
  const double x = n * ratio * ratio / (m - n);
  const double lambda = (x_norm / sigma) * (x_norm / sigma);
  return specfun::noncentral_f_sf(m - n, n, lambda, x);
}

specfun::TailProbability residual_tail_prob_unsquared(int m, int n, double x_norm, double sigma, double eps1,
                                                      double eps2) {
  check_tail_args(m, n, x_norm, sigma, eps1, eps2, "residual_tail_prob_unsquared");
  const double x = n * (eps2 / eps1) / (m - n);
  const double lambda = (x_norm / sigma) * (x_norm / sigma);
  return specfun::noncentral_f_sf(m - n, n, lambda, x);
}

double growth_factor(double eps1, double eps2) {
  if (!(eps1 > 0.0 && eps2 > 0.0)) throw specfun::DomainError("growth_factor: eps1, eps2 must be > 0");
  const double rho = eps1 / eps2;
  return rho + std::hypot(1.0, rho);
}

double growth_factor_printed(double eps1, double eps2) {
  if (!(eps1 > 0.0 && eps2 > 0.0)) throw specfun::DomainError("growth_factor_printed: eps1, eps2 must be > 0");
  return eps1 * std::hypot(1.0, eps1 / eps2);
}

KappaGrowth kappa_growth_prob(const DenseMatrix& b, double x_norm, double sigma, double eps1, double eps2) {
  const int m = static_cast<int>(b.rows());
  const int n = static_cast<int>(b.cols());
  KappaGrowth out;
  out.probability = residual_tail_prob(m, n, x_norm, sigma, eps1, eps2);
  out.kappa_bound = linalg::cond(b) * growth_factor(eps1, eps2);
  return out;
}

ChainBoundReport qr_chain_bound(int m, int n, std::span<const double> a_norms, double sigma,
                                std::span<const double> eps1, std::span<const double> eps2) {
  if (n < 1 || n > m) throw specfun::DomainError("qr_chain_bound: need 1 <= n <= m");
  const auto steps = static_cast<std::size_t>(n - 1);
  if (a_norms.size() != steps || eps1.size() != steps || eps2.size() != steps) {
    throw linalg::DimensionError("qr_chain_bound: a_norms, eps1, eps2 must have length n-1");
  }
  if (!(sigma >= 0.0)) throw specfun::DomainError("qr_chain_bound: sigma must be >= 0");

  ChainBoundReport rep;
  double miss = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    const int i = static_cast<int>(k) + 2;
    const double g = growth_factor(eps1[k], eps2[k]);
    const double p = sigma == 0.0 ? 1.0 : residual_tail_prob(m, i - 1, a_norms[k], sigma, eps1[k], eps2[k]).value;
    rep.per_step_factors.push_back(g);
    rep.step_probabilities.push_back(p);
    rep.kappa_product_bound *= g;
    miss += 1.0 - p;
  }
  rep.probability_lower_bound = std::max(0.0, 1.0 - miss);
  return rep;
}

}  // namespace condgrowth::bounds
