#include <algorithm>
#include <cmath>
#include <limits>

#include "condgrowth/bounds.hpp"

namespace condgrowth::bounds {

using linalg::Vector;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// σ_max/σ_min from a spectrum, +inf for a singular matrix.
double ratio_or_inf(const linalg::SingularSpectrum& sv) {
  if (sv.values.empty() || sv.min() <= 0.0) return kInf;
  return sv.max() / sv.min();
}

double spectral_cond(const DenseMatrix& a) { return ratio_or_inf(linalg::singular_values(a)); }

void check_length(const DenseMatrix& b, std::span<const double> v, const char* fn) {
  if (v.size() != b.rows()) throw linalg::DimensionError(std::string(fn) + ": vector length differs from row count");
}

Vector add(std::span<const double> x, std::span<const double> y) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

bool unit_columns(const DenseMatrix& b) {
  for (std::size_t j = 0; j < b.cols(); ++j) {
    if (std::abs(linalg::norm2(b.col(j)) - 1.0) > 1e-12) return false;
  }
  return true;
}

// γ²s² - √(γ⁴s⁴ + 4γ²t²), written without cancellation.
double shifted_radical(double g2s2, double rad, double gamma, double bty_norm) {
  return -4.0 * gamma * gamma * bty_norm * bty_norm / (g2s2 + rad);
}

}  // namespace

bool BoundReport::holds() const {
  if (!preconditions_met || !actual_value) return true;
  if (side == BoundSide::upper) return *actual_value <= bound_value * (1.0 + kBoundSlack);
  return *actual_value >= bound_value * (1.0 - kBoundSlack);
}

std::array<double, 3> rank2_eigenvalues(double a_norm, double b) {
  if (!(a_norm >= 0.0)) throw specfun::DomainError("rank2_eigenvalues: a_norm must be >= 0");
  const double root = std::hypot(b, 2.0 * a_norm);
  if (root == 0.0) return {0.0, 0.0, 0.0};
  const double a2 = a_norm * a_norm;
  // Product of the two nonzero roots is -a², so the smaller one follows from the larger.
  if (b >= 0.0) {
    const double plus = 0.5 * (b + root);
    return {0.0, plus, -a2 / plus};
  }
  const double minus = 0.5 * (b - root);
  return {0.0, -a2 / minus, minus};
}

BoundReport kappa_bound_general(double sigma_max, double sigma_min, double sum_norm, double bty_norm,
                                double gamma) {
  BoundReport rep;
  rep.name = "kappa_bound_general";
  rep.inputs = {.sigma_max = sigma_max, .sigma_min = sigma_min, .gamma = gamma, .sum_norm = sum_norm,
                .bty_norm = bty_norm};
  rep.bound_value = kInf;
  if (gamma == 0.0) {
    rep.explanation = "gamma must be nonzero";
    return rep;
  }
  const double g2s2 = gamma * gamma * sum_norm * sum_norm;
  const double rad = std::sqrt(g2s2 * g2s2 + 4.0 * gamma * gamma * bty_norm * bty_norm);
  const double num = 2.0 * sigma_max * sigma_max + g2s2 + rad;
  const double den = 2.0 * sigma_min * sigma_min + shifted_radical(g2s2, rad, gamma, bty_norm);
  if (!(den > 0.0)) {
    rep.explanation = "denominator 2*sigma_min^2 + g^2|x+y|^2 - sqrt(...) is not positive";
    return rep;
  }
  rep.bound_value = std::sqrt(num / den);
  rep.preconditions_met = true;
  return rep;
}

BoundReport kappa_bound_general(const DenseMatrix& b, std::span<const double> x, std::span<const double> y,
                                double gamma) {
  check_length(b, x, "kappa_bound_general");
  check_length(b, y, "kappa_bound_general");
  const auto sv = linalg::singular_values(b);
  const Vector sum = add(x, y);
  const double bty = linalg::norm2(linalg::transpose_times(b, y));
  const double btx = linalg::norm2(linalg::transpose_times(b, x));

  BoundReport rep = kappa_bound_general(sv.max(), sv.min(), linalg::norm2(sum), bty, gamma);
  rep.actual_value = spectral_cond(linalg::append_column(b, sum, gamma));
  if (btx > 1e-10 * sv.max() * linalg::norm2(x)) {
    rep.preconditions_met = false;
    rep.explanation = "x is not orthogonal to span(B)";
  }
  return rep;
}

double eps_growth_term(double sigma_max, double sigma_min, double eps) {
  const double inv_k2 = (sigma_min / sigma_max) * (sigma_min / sigma_max);
  return (eps * (1.0 + inv_k2) - (1.0 - inv_k2)) / (2.0 * sigma_min * sigma_min + 1.0 - eps);
}

BoundReport kappa_bound_eps(double sigma_max, double sigma_min, double sum_norm, double bty_norm, double eps) {
  BoundReport rep;
  rep.name = "kappa_bound_eps";
  rep.inputs = {.sigma_max = sigma_max, .sigma_min = sigma_min, .sum_norm = sum_norm, .bty_norm = bty_norm,
                .eps = eps};
  rep.bound_value = kInf;
  if (!(sum_norm > 0.0)) {
    rep.explanation = "x + y is zero";
    return rep;
  }
  if (!(sigma_min > 0.0)) {
    rep.explanation = "B is singular";
    return rep;
  }
  const double ratio = bty_norm / sum_norm;
  if (std::sqrt(1.0 + 4.0 * ratio * ratio) > eps) {
    rep.explanation = "hypothesis sqrt(1 + 4|B^T y|^2/|x+y|^2) <= eps fails";
    return rep;
  }
  if (!(2.0 * sigma_min * sigma_min + 1.0 - eps > 0.0)) {
    rep.explanation = "denominator 2*sigma_min^2 + 1 - eps is not positive";
    return rep;
  }
  const double f = eps_growth_term(sigma_max, sigma_min, eps);
  rep.bound_value = (sigma_max / sigma_min) * std::sqrt(1.0 + f);
  rep.preconditions_met = true;
  return rep;
}

BoundReport kappa_bound_eps(const DenseMatrix& b, std::span<const double> x, std::span<const double> y,
                            double eps) {
  check_length(b, x, "kappa_bound_eps");
  check_length(b, y, "kappa_bound_eps");
  const auto sv = linalg::singular_values(b);
  Vector sum = add(x, y);
  const double s = linalg::norm2(sum);
  const double bty = linalg::norm2(linalg::transpose_times(b, y));
  const double btx = linalg::norm2(linalg::transpose_times(b, x));

  BoundReport rep = kappa_bound_eps(sv.max(), sv.min(), s, bty, eps);
  if (s > 0.0) rep.actual_value = spectral_cond(linalg::append_column(b, sum, 1.0 / s));
  if (btx > 1e-10 * sv.max() * linalg::norm2(x)) {
    rep.preconditions_met = false;
    rep.explanation = "x is not orthogonal to span(B)";
  }
  return rep;
}

double liesen_kappa_from_residual(double c_norm, double gamma, double r_norm) {
  if (!(gamma > 0.0 && r_norm > 0.0 && c_norm >= 0.0)) {
    throw specfun::DomainError("liesen_kappa_from_residual: need gamma > 0, r_norm > 0, c_norm >= 0");
  }
  const double alpha = 1.0 + gamma * gamma * c_norm * c_norm;
  const double two_gr = 2.0 * gamma * r_norm;
  double disc = (alpha - two_gr) * (alpha + two_gr);
  if (disc < 0.0) {
    if (disc < -1e-12 * alpha * alpha) {
      throw specfun::DomainError("liesen_kappa_from_residual: alpha^2 < 4 gamma^2 r^2; inconsistent inputs");
    }
    disc = 0.0;
  }
  return (alpha + std::sqrt(disc)) / two_gr;
}

double liesen_residual_from_kappa(double c_norm, double gamma, double kappa) {
  if (!(gamma > 0.0 && kappa >= 1.0 && c_norm >= 0.0)) {
    throw specfun::DomainError("liesen_residual_from_kappa: need gamma > 0, kappa >= 1, c_norm >= 0");
  }
  const double alpha = 1.0 + gamma * gamma * c_norm * c_norm;
  if (std::isinf(kappa)) return 0.0;
  return (alpha / gamma) / (kappa + 1.0 / kappa);
}

ResidualIdentityCheck liesen_residual_identity_check(const DenseMatrix& b, std::span<const double> c,
                                                     double gamma) {
  check_length(b, c, "liesen_residual_identity_check");
  if (!(gamma > 0.0)) throw specfun::DomainError("liesen_residual_identity_check: gamma must be > 0");
  const DenseMatrix bc = linalg::append_column(b, c, gamma);
  const auto sv_bc = linalg::singular_values(bc);
  if (sv_bc.min() <= linalg::kRankTolerance * sv_bc.max()) {
    throw linalg::RankDeficientError("liesen_residual_identity_check: [B, c] is rank deficient");
  }
  const auto sv_b = linalg::singular_values(b);
  const auto qr = linalg::householder_qr(b);

  ResidualIdentityCheck out;
  out.direct = linalg::norm2(linalg::ls_residual(b, c).r);

  double prod = sv_bc.min() / gamma;
  for (std::size_t j = 0; j < b.cols(); ++j) prod *= sv_bc.values[j] / sv_b.values[j];
  out.singular_product = prod;

  const auto sv_qc = linalg::singular_values(linalg::append_column(qr.q, c, gamma));
  out.orthonormal_product = sv_qc.min() * sv_qc.max() / gamma;

  const double vals[3] = {out.direct, out.singular_product, out.orthonormal_product};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double scale = std::max(std::abs(vals[i]), std::abs(vals[j]));
      if (scale > 0.0) out.max_discrepancy = std::max(out.max_discrepancy, std::abs(vals[i] - vals[j]) / scale);
    }
  }
  return out;
}

MinMaxSingularReports minmax_singular_bounds(const DenseMatrix& b, std::span<const double> c, double gamma) {
  check_length(b, c, "minmax_singular_bounds");
  const auto qr = linalg::householder_qr(b);
  const auto sv_b = linalg::singular_values(b);
  const auto sv_qc = linalg::singular_values(linalg::append_column(qr.q, c, 1.0));
  const auto sv_bc = linalg::singular_values(linalg::append_column(b, c, gamma));

  MinMaxSingularReports out;
  auto& up = out.sigma_max_upper;
  up.name = "sigma_max_upper";
  up.side = BoundSide::upper;
  up.inputs = {.sigma_max = sv_b.max(), .sigma_min = sv_b.min(), .gamma = gamma};
  up.bound_value = std::max(sv_b.max(), gamma) * sv_qc.max();
  up.actual_value = sv_bc.max();

  auto& lo = out.sigma_min_lower;
  lo.name = "sigma_min_lower";
  lo.side = BoundSide::lower;
  lo.inputs = up.inputs;
  lo.bound_value = std::min(sv_b.min(), gamma) * sv_qc.min();
  lo.actual_value = sv_bc.min();

  const bool ok = gamma > 0.0;
  up.preconditions_met = lo.preconditions_met = ok;
  if (!ok) up.explanation = lo.explanation = "gamma must be > 0";
  return out;
}

BoundReport kappa_bound_via_q(const DenseMatrix& b, std::span<const double> c, double gamma) {
  check_length(b, c, "kappa_bound_via_q");
  const auto qr = linalg::householder_qr(b);
  const auto sv_b = linalg::singular_values(b);
  const double kappa_qc = spectral_cond(linalg::append_column(qr.q, c, 1.0));

  BoundReport rep;
  rep.name = "kappa_bound_via_q";
  rep.inputs = {.sigma_max = sv_b.max(), .sigma_min = sv_b.min(), .gamma = gamma};
  rep.actual_value = spectral_cond(linalg::append_column(b, c, gamma));
  rep.bound_value = kInf;
  if (!(gamma > 0.0)) {
    rep.explanation = "gamma must be > 0";
    return rep;
  }
  if (std::isinf(kappa_qc)) {
    rep.explanation = "c lies in span(B); [Q, c] is singular";
    return rep;
  }
  const double factor = std::max({sv_b.max() / sv_b.min(), sv_b.max() / gamma, gamma / sv_b.min()});
  rep.bound_value = factor * kappa_qc;
  rep.preconditions_met = true;
  return rep;
}

BoundReport kappa_bound_unit_columns(double kappa_b, double c_norm, double r_norm, double gamma) {
  BoundReport rep;
  rep.name = "kappa_bound_unit_columns";
  rep.inputs = {.gamma = gamma, .c_norm = c_norm, .r_norm = r_norm};
  rep.bound_value = kInf;
  if (!(gamma > 0.0)) {
    rep.explanation = "gamma must be > 0";
    return rep;
  }
  if (!(r_norm > 1e-14 * std::max(c_norm, 1.0))) {
    rep.explanation = "residual is zero (c in span(B)); the bound has a pole";
    return rep;
  }
  rep.bound_value = kappa_b * liesen_kappa_from_residual(c_norm, gamma, r_norm);
  rep.preconditions_met = true;
  return rep;
}

BoundReport kappa_bound_unit_columns(const DenseMatrix& b, std::span<const double> c, double gamma) {
  check_length(b, c, "kappa_bound_unit_columns");
  const double kappa_b = spectral_cond(b);
  const double r_norm = linalg::norm2(linalg::ls_residual(b, c).r);
  BoundReport rep = kappa_bound_unit_columns(kappa_b, linalg::norm2(c), r_norm, gamma);
  const auto sv_b = linalg::singular_values(b);
  rep.inputs.sigma_max = sv_b.max();
  rep.inputs.sigma_min = sv_b.min();
  rep.actual_value = spectral_cond(linalg::append_column(b, c, gamma));
  if (!unit_columns(b)) {
    rep.preconditions_met = false;
    rep.explanation = "columns of B are not unit norm";
  }
  return rep;
}

double unit_residual_factor(double r_norm) {
  if (!(r_norm > 0.0)) throw specfun::DomainError("unit_residual_factor: r_norm must be > 0");
  const double rr = std::min(r_norm, 1.0);
  return (1.0 + std::sqrt((1.0 - rr) * (1.0 + rr))) / rr;
}

BoundReport kappa_bound_unit_q(double kappa_b, double r_norm) {
  BoundReport rep;
  rep.name = "kappa_bound_unit_q";
  rep.inputs = {.gamma = 1.0, .c_norm = 1.0, .r_norm = r_norm};
  rep.bound_value = kInf;
  if (!(r_norm > 1e-14)) {
    rep.explanation = "residual is zero (q in span(B)); the bound has a pole";
    return rep;
  }
  rep.bound_value = kappa_b * unit_residual_factor(r_norm);
  rep.preconditions_met = true;
  return rep;
}

BoundReport kappa_bound_unit_q(const DenseMatrix& b, std::span<const double> q) {
  check_length(b, q, "kappa_bound_unit_q");
  const double r_norm = linalg::norm2(linalg::ls_residual(b, q).r);
  BoundReport rep = kappa_bound_unit_q(spectral_cond(b), r_norm);
  const auto sv_b = linalg::singular_values(b);
  rep.inputs.sigma_max = sv_b.max();
  rep.inputs.sigma_min = sv_b.min();
  rep.actual_value = spectral_cond(linalg::append_column(b, q, 1.0));
  if (!unit_columns(b)) {
    rep.preconditions_met = false;
    rep.explanation = "columns of B are not unit norm";
  } else if (std::abs(linalg::norm2(q) - 1.0) > 1e-12) {
    rep.preconditions_met = false;
    rep.explanation = "q is not a unit vector";
  }
  return rep;
}

}  // namespace condgrowth::bounds
