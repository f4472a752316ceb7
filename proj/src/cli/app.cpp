#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "condgrowth/cli.hpp"
#include "condgrowth/linalg.hpp"
#include "condgrowth/matrix_csv.hpp"
#include "condgrowth/specfun.hpp"

namespace condgrowth::cli {

namespace {

using namespace detail;

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

void add_sim_common(CLI::App* cmd, SimOptions& o) {
  cmd->add_option("--trials", o.cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.cfg.seed, "Seed; all randomness derives from it");
  cmd->add_option("--workers", o.cfg.workers, "Worker threads (output does not depend on it)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output CSV path (default: stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Condition-number growth of appended columns under noisy orthogonalization.", "condgrowth"};
  app.require_subcommand(1);
  app.allow_extras(false);

  SpecfunOptions sf;
  auto* specfun = app.add_subcommand(
      "specfun",
      "Evaluate a special function: gamma family, incomplete beta, modified Bessel I, generalized Marcum-Q, "
      "noncentral chi-squared and F, and P(||X+Y|| > eps) for Gaussian Y.");
  specfun
      ->add_option("--fn", sf.fn,
                   "log_gamma(x) | upper_gamma(s,x) | lower_gamma(s,x) | ibeta(a,b,x) | bessel_i(nu,t) | "
                   "bessel_i_scaled(nu,t) | log_bessel_i(nu,t) | marcum(order,alpha,beta) | ncx2_cdf(k,lambda,x) | "
                   "ncx2_sf(k,lambda,x) | ncf_sf(d1,d2,lambda,x) | norm_tail(x-norm,sigma,eps,m)")
      ->required()
      ->check(CLI::IsMember({"log_gamma", "upper_gamma", "lower_gamma", "ibeta", "bessel_i", "bessel_i_scaled",
                             "log_bessel_i", "marcum", "ncx2_cdf", "ncx2_sf", "ncf_sf", "norm_tail"}));
  for (auto [name, field] : {std::pair{"--x", &sf.x}, {"--s", &sf.s}, {"--a", &sf.a}, {"--b", &sf.b},
                             {"--nu", &sf.nu}, {"--t", &sf.t}, {"--order", &sf.order}, {"--alpha", &sf.alpha},
                             {"--beta", &sf.beta}, {"--k", &sf.k}, {"--lambda", &sf.lambda}, {"--d1", &sf.d1},
                             {"--d2", &sf.d2}, {"--x-norm", &sf.x_norm}, {"--sigma", &sf.sigma},
                             {"--eps", &sf.eps}}) {
    specfun->add_option(name, *field);
  }
  specfun->add_option("--m", sf.m, "Dimension for norm_tail");
  specfun->footer("Output CSV: fn,value,abs_error_bound (the bound is empty for closed-form functions).");

  BoundsOptions bo;
  auto* bounds_cmd = app.add_subcommand(
      "bounds",
      "Bounds on kappa([B, c*gamma]) for a user matrix B and column c: the rank-one update bound for "
      "c = x + y with x orthogonal to span(B) and its eps form (with --x/--y), the max/min singular value "
      "bounds through Q, the kappa bound through kappa([Q, c]), the unit-column residual bound and its "
      "gamma = 1 unit-vector case, plus three independent evaluations of the least-squares residual norm.");
  bounds_cmd->add_option("--matrix", bo.matrix, "CSV matrix B (m x n, full column rank)")->required();
  bounds_cmd->add_option("--column", bo.column, "CSV vector c (m x 1 or 1 x m)")->required();
  bounds_cmd->add_option("--gamma", bo.gamma, "Column scale gamma > 0");
  bounds_cmd->add_option("--x", bo.x, "CSV vector x, orthogonal to span(B)");
  bounds_cmd->add_option("--y", bo.y, "CSV vector y");
  bounds_cmd->add_option("--eps", bo.eps, "eps for the eps form (default: smallest admissible value)");
  bounds_cmd->add_option("--format", bo.format, "text | csv")->check(CLI::IsMember({"text", "csv"}));
  bounds_cmd->footer("CSV columns: " + bounds::bound_report_csv_header());

  SimOptions nt;
  nt.cfg.m = 50;
  nt.cfg.sigma = 0.05;
  nt.cfg.x_norm = 1.0;
  nt.cfg.eps = 0.9;
  auto* sim_nt = app.add_subcommand(
      "sim-norm-tail",
      "Monte Carlo check that P(||X + Y|| > eps) = Q_{m/2}(||X||/sigma, eps/sigma) for Y ~ N(0, sigma^2 I_m).");
  sim_nt->add_option("--m", nt.cfg.m, "Dimension")->check(CLI::PositiveNumber);
  sim_nt->add_option("--x-norm", nt.cfg.x_norm, "||X||");
  sim_nt->add_option("--eps", nt.cfg.eps, "Threshold eps");
  auto* nt_sigma = sim_nt->add_option("--sigma", nt.cfg.sigma, "Noise standard deviation");
  sim_nt->add_option("--sigma-grid", nt.sigma_grid, "start:stop:count, log-spaced")->excludes(nt_sigma);
  sim_nt->add_option("--figures", nt.figures_dir,
                     "Write fig1_norm_tail.csv (eps 0.9) and fig2_norm_tail.csv (eps 1.5) for m in {10, 100}, "
                     "||X|| = 1, sigma on 1e-3:1:20 into this directory");
  add_sim_common(sim_nt, nt);
  sim_nt->footer("Output CSV: sigma,m,x_norm,eps," + sim::summary_csv_header());

  SimOptions pr;
  pr.cfg.m = 20;
  pr.cfg.n = 5;
  pr.cfg.sigma = 0.1;
  pr.cfg.x_norm = 0.3;
  pr.cfg.eps = 0.5;
  auto* sim_pr = app.add_subcommand(
      "sim-projection",
      "Monte Carlo check that the noise projected onto span(Q)^perp has i.i.d. N(0, sigma^2) components, and "
      "that P(||X + P_perp Y|| > eps) = Q_{(m-n)/2}(||X||/sigma, eps/sigma) for X in span(Q)^perp.");
  sim_pr->add_option("--m", pr.cfg.m, "Ambient dimension")->check(CLI::PositiveNumber);
  sim_pr->add_option("--n", pr.cfg.n, "Columns of Q (0 allowed)")->check(CLI::NonNegativeNumber);
  sim_pr->add_option("--sigma", pr.cfg.sigma, "Noise standard deviation");
  sim_pr->add_option("--x-norm", pr.cfg.x_norm, "||X||");
  sim_pr->add_option("--eps", pr.cfg.eps, "Threshold eps");
  add_sim_common(sim_pr, pr);
  sim_pr->footer("Output CSV: m,n,sigma,x_norm,eps,cov_max_deviation,cov_tolerance,cov_ok," +
                 sim::summary_csv_header());

  SimOptions ls;
  ls.cfg.m = 30;
  ls.cfg.n = 5;
  ls.cfg.sigma = 0.05;
  ls.cfg.x_norm = 1.0;
  ls.cfg.eps1 = 0.2;
  ls.cfg.eps2 = 1.0;
  auto* sim_ls = app.add_subcommand(
      "sim-ls",
      "Monte Carlo check of the noisy least-squares residual law: P(||r|| >= 1/sqrt(1 + (eps1/eps2)^2)) equals the "
      "noncentral F survival F'_{m-n,n}(n eps2^2/((m-n) eps1^2); ||X||^2/sigma^2). The unsquared argument "
      "n eps2/((m-n) eps1) is scored on the same draws.");
  sim_ls->add_option("--m", ls.cfg.m, "Rows")->check(CLI::PositiveNumber);
  sim_ls->add_option("--n", ls.cfg.n, "Columns")->check(CLI::PositiveNumber);
  sim_ls->add_option("--sigma", ls.cfg.sigma, "Noise standard deviation");
  sim_ls->add_option("--x-norm", ls.cfg.x_norm, "||X||");
  sim_ls->add_option("--eps1", ls.cfg.eps1, "eps1");
  sim_ls->add_option("--eps2", ls.cfg.eps2, "eps2");
  add_sim_common(sim_ls, ls);
  sim_ls->footer("Output CSV: m,n,sigma,x_norm,eps1,eps2,form," + sim::summary_csv_header());

  SimOptions qr;
  qr.cfg.m = 100;
  qr.cfg.n = 5;
  qr.cfg.sigma = 1e-3;
  qr.cfg.eps1 = 0.05;
  qr.cfg.eps2 = 1.0;
  auto* sim_qr = app.add_subcommand(
      "sim-qr-noise",
      "Monte Carlo check of the union bound for a Gram-Schmidt loop with noisy orthogonalization: "
      "kappa(Q_hat) <= prod_i g(eps1, eps2) with probability at least 1 - sum_i (1 - p_i), "
      "g = eps1/eps2 + sqrt(1 + (eps1/eps2)^2).");
  sim_qr->add_option("--m", qr.cfg.m, "Rows")->check(CLI::PositiveNumber);
  sim_qr->add_option("--n", qr.cfg.n, "Columns")->check(CLI::PositiveNumber);
  sim_qr->add_option("--sigma", qr.cfg.sigma, "Noise standard deviation (0 allowed)");
  sim_qr->add_option("--eps1", qr.cfg.eps1, "eps1 (every step)");
  sim_qr->add_option("--eps2", qr.cfg.eps2, "eps2 (every step)");
  sim_qr->add_option("--input", qr.input, "CSV input matrix (default: first n columns of I_m)");
  add_sim_common(sim_qr, qr);
  sim_qr->footer(
      "Output CSV: m,n,sigma,eps1,eps2,kappa_product_bound,probability_lower_bound,trials_run,excluded,"
      "violations,violation_freq,allowance,stderr,max_kappa");

  ErrataOptions er;
  auto* errata = app.add_subcommand(
      "errata-report",
      "Side-by-side values of printed and corrected forms: Marcum-Q at alpha = 0, the F argument of the "
      "residual law, the growth-factor prefactor, the degrees of freedom per Gram-Schmidt step, the rank-one "
      "update bounds, the residual of c versus gamma*c, and P(||X+Y|| > eps) over ||X||.");
  errata->add_option("--trials", er.trials, "Monte Carlo trials per check")->check(CLI::PositiveNumber);
  errata->add_option("--seed", er.seed, "Seed");
  errata->add_option("--workers", er.workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitBadInput;
  }

  try {
    if (specfun->parsed()) run_specfun(sf, out);
    else if (bounds_cmd->parsed()) run_bounds(bo, out);
    else if (sim_nt->parsed()) run_sim_norm_tail(nt, out);
    else if (sim_pr->parsed()) run_sim_projection(pr, out);
    else if (sim_ls->parsed()) run_sim_ls(ls, out);
    else if (sim_qr->parsed()) run_sim_qr_noise(qr, out);
    else if (errata->parsed()) run_errata_report(er, out);
  } catch (const linalg::RankDeficientError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitPrecondition;
  } catch (const linalg::SingularMatrixError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitBadInput;
  }
  return kExitOk;
}

}  // namespace condgrowth::cli
