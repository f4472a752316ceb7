#include <cmath>
#include <ostream>

#include "commands.hpp"
#include "condgrowth/bounds.hpp"
#include "condgrowth/matrix_csv.hpp"
#include "condgrowth/specfun.hpp"

namespace condgrowth::cli::detail {

using linalg::DenseMatrix;
using linalg::format_double;

namespace {

sim::ExperimentConfig base_config(const ErrataOptions& o, std::uint64_t section) {
  sim::ExperimentConfig cfg;
  cfg.trials = o.trials;
  cfg.workers = o.workers;
  cfg.seed = sim::derive_seed(o.seed, 0xE77A, section);
  return cfg;
}

void marcum_alpha_zero(const ErrataOptions& o, std::ostream& out) {
  out << "[marcum_alpha_zero]\n"
      << "# Q_M(0, beta): limit form Q(M, beta^2/2) vs printed form Q(M, beta^2); Monte Carlo of P(||Y|| > beta),\n"
      << "# Y ~ N(0, I_{2M}); the series column evaluates the alpha > 0 branch at alpha = 1e-6.\n"
      << "M,beta,limit_form,printed_form,series_alpha_1e-6,monte_carlo,z_limit,z_printed\n";
  std::uint64_t point = 0;
  for (double order : {0.5, 1.0, 1.5, 2.5}) {
    for (double beta : {0.5, 1.0, 2.0, 3.0}) {
      sim::ExperimentConfig cfg = base_config(o, 1);
      cfg.seed = sim::derive_seed(cfg.seed, 0, point++);
      cfg.m = static_cast<int>(2.0 * order);
      cfg.x_norm = 0.0;
      cfg.sigma = 1.0;
      cfg.eps = beta;
      const auto mc = sim::norm_tail_experiment(cfg);
      const double limit = specfun::regularized_upper_gamma(order, 0.5 * beta * beta);
      const double printed = specfun::regularized_upper_gamma(order, beta * beta);
      const double series = specfun::marcum_q(specfun::MarcumOrder(order), 1e-6, beta).value;
      out << format_double(order) << ',' << format_double(beta) << ',' << format_double(limit) << ','
          << format_double(printed) << ',' << format_double(series) << ',' << format_double(mc.empirical_prob) << ','
          << format_double(sim::with_theory(mc, limit).z_score) << ','
          << format_double(sim::with_theory(mc, printed).z_score) << '\n';
    }
  }
  out << '\n';
}

void residual_argument(const ErrataOptions& o, std::ostream& out) {
  sim::ExperimentConfig cfg = base_config(o, 2);
  cfg.m = 30;
  cfg.n = 5;
  cfg.x_norm = 1.0;
  cfg.sigma = 0.05;
  cfg.eps1 = 0.2;
  cfg.eps2 = 1.0;
  const auto mc = sim::ls_residual_experiment(cfg);
  const double unsq =
      bounds::residual_tail_prob_unsquared(cfg.m, cfg.n, cfg.x_norm, cfg.sigma, cfg.eps1, cfg.eps2).value;
  const auto printed = sim::with_theory(mc, unsq);
  out << "[residual_law_argument]\n"
      << "# P(||r|| >= 1/sqrt(1+(eps1/eps2)^2)) at m=30 n=5 ||X||=1 sigma=0.05 eps1=0.2 eps2=1.\n"
      << "# squared: F argument n eps2^2/((m-n) eps1^2); unsquared (printed): n eps2/((m-n) eps1).\n"
      << "form,argument,theory,empirical,stderr,z\n"
      << "squared," << format_double(cfg.n * 25.0 / (cfg.m - cfg.n)) << ',' << format_double(mc.theory_prob) << ','
      << format_double(mc.empirical_prob) << ',' << format_double(mc.std_error) << ',' << format_double(mc.z_score)
      << '\n'
      << "unsquared," << format_double(cfg.n * 5.0 / (cfg.m - cfg.n)) << ',' << format_double(unsq) << ','
      << format_double(mc.empirical_prob) << ',' << format_double(printed.std_error) << ','
      << format_double(printed.z_score) << "\n\n";
}

void growth_prefactor(std::ostream& out) {
  out << "[growth_prefactor]\n"
      << "# g = eps1/eps2 + sqrt(1+(eps1/eps2)^2) vs printed eps1*sqrt(1+(eps1/eps2)^2). witness_kappa is\n"
      << "# kappa([e1, q]) for unit q whose residual against e1 equals the threshold 1/sqrt(1+(eps1/eps2)^2).\n"
      << "eps1,eps2,threshold,g,printed,witness_kappa,printed_below_witness\n";
  const std::pair<double, double> grid[] = {{0.05, 1.0}, {0.2, 1.0}, {0.5, 1.0}, {1.0, 1.0}, {2.0, 1.0}, {0.5, 0.25}};
  for (const auto& [e1, e2] : grid) {
    const double r0 = bounds::residual_threshold(e1, e2);
    const DenseMatrix w = DenseMatrix::from_columns({{1.0, 0.0}, {std::sqrt((1.0 - r0) * (1.0 + r0)), r0}});
    const auto sv = linalg::singular_values(w);
    const double witness = sv.max() / sv.min();
    const double printed = bounds::growth_factor_printed(e1, e2);
    out << format_double(e1) << ',' << format_double(e2) << ',' << format_double(r0) << ','
        << format_double(bounds::growth_factor(e1, e2)) << ',' << format_double(printed) << ','
        << format_double(witness) << ',' << (printed < witness * (1.0 - 1e-12) ? "true" : "false") << '\n';
  }
  out << '\n';
}

void chain_degrees_of_freedom(const ErrataOptions& o, std::ostream& out) {
  out << "[chain_step_degrees_of_freedom]\n"
      << "# Step i appends to i-1 columns: F'_{m-i+1,i-1} (used) vs F'_{m-i,i} (printed).\n"
      << "# m=30 ||a_i||=1 sigma=0.05 eps1=0.2 eps2=1; Monte Carlo with i-1 columns.\n"
      << "i,used_theory,printed_theory,empirical,z_used,z_printed\n";
  for (int i : {2, 3, 5}) {
    sim::ExperimentConfig cfg = base_config(o, 3);
    cfg.seed = sim::derive_seed(cfg.seed, 0, static_cast<std::uint64_t>(i));
    cfg.m = 30;
    cfg.n = i - 1;
    cfg.x_norm = 1.0;
    cfg.sigma = 0.05;
    cfg.eps1 = 0.2;
    cfg.eps2 = 1.0;
    const auto mc = sim::ls_residual_experiment(cfg);
    const double printed = bounds::residual_tail_prob(cfg.m, i, cfg.x_norm, cfg.sigma, cfg.eps1, cfg.eps2).value;
    out << i << ',' << format_double(mc.theory_prob) << ',' << format_double(printed) << ','
        << format_double(mc.empirical_prob) << ',' << format_double(mc.z_score) << ','
        << format_double(sim::with_theory(mc, printed).z_score) << '\n';
  }
  out << '\n';
}

void rank_one_counterexamples(std::ostream& out) {
  out << "[rank_one_update_counterexamples]\n"
      << "# B = [e1, e2] in R^3, x = 0.5 e3, y = 0, gamma = 1.\n";
  const DenseMatrix b2 = DenseMatrix::from_columns({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  bounds::write_text(out, bounds::kappa_bound_general(b2, std::vector<double>{0.0, 0.0, 0.5},
                                                      std::vector<double>{0.0, 0.0, 0.0}, 1.0));
  out << "# B = e1 in R^2, x = 0.8 e2, y = 0.6 e1, eps = sqrt(1 + 4*0.36) (smallest admissible).\n";
  const DenseMatrix b1 = DenseMatrix::from_columns({{1.0, 0.0}});
  bounds::write_text(out, bounds::kappa_bound_eps(b1, std::vector<double>{0.0, 0.8}, std::vector<double>{0.6, 0.0},
                                                  std::sqrt(1.0 + 4.0 * 0.6 * 0.6)));
  out << '\n';
}

void residual_of_c(std::ostream& out) {
  out << "[unit_column_residual_reading]\n"
      << "# B = e1 in R^2, c = (0.6, 0.8). Bound with the residual of c (used) vs of gamma*c.\n"
      << "gamma,actual_kappa,bound_residual_of_c,bound_residual_of_gamma_c\n";
  const DenseMatrix b = DenseMatrix::from_columns({{1.0, 0.0}});
  const std::vector<double> c{0.6, 0.8};
  const double r = linalg::norm2(linalg::ls_residual(b, c).r);
  for (double gamma : {0.5, 1.0, 2.0, 5.0}) {
    const auto rep = bounds::kappa_bound_unit_columns(b, c, gamma);
    std::string alt;
    try {
      alt = format_double(bounds::liesen_kappa_from_residual(1.0, gamma, gamma * r));
    } catch (const specfun::DomainError&) {
      alt = "undefined";
    }
    out << format_double(gamma) << ',' << format_double(*rep.actual_value) << ',' << format_double(rep.bound_value)
        << ',' << alt << '\n';
  }
  out << '\n';
}

void x_norm_scan(std::ostream& out) {
  out << "[tail_probability_over_x_norm]\n"
      << "# P(||X + Y|| > eps), Y ~ N(0, sigma^2 I_{m-n}), m-n = 100, sigma = 2^-8, eps = 0.1.\n"
      << "x_norm,probability\n";
  for (double x : {0.0, 0.05, 0.08, 0.09, 0.1, 0.11, 0.12, 0.15, 0.2}) {
    out << format_double(x) << ',' << format_double(specfun::norm_tail_prob(x, std::ldexp(1.0, -8), 0.1, 100).value)
        << '\n';
  }
}

}  // namespace

void run_errata_report(const ErrataOptions& o, std::ostream& out) {
  marcum_alpha_zero(o, out);
  residual_argument(o, out);
  growth_prefactor(out);
  chain_degrees_of_freedom(o, out);
  rank_one_counterexamples(out);
  residual_of_c(out);
  x_norm_scan(out);
}

}  // namespace condgrowth::cli::detail
