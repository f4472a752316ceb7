#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "commands.hpp"
#include "condgrowth/bounds.hpp"
#include "condgrowth/matrix_csv.hpp"
#include "condgrowth/specfun.hpp"

namespace condgrowth::cli::detail {

using linalg::format_double;

namespace {

double need(const std::optional<double>& v, const std::string& fn, const char* flag) {
  if (!v) throw std::invalid_argument("--fn " + fn + " requires " + flag);
  return *v;
}

std::string tail_row(const std::string& fn, const specfun::TailProbability& p) {
  return fn + ',' + format_double(p.value) + ',' + format_double(p.abs_error_bound);
}

// Writes to --out when given, otherwise to `fallback`.
void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  body(file);
  if (!file) throw std::runtime_error("failed writing " + path);
}

linalg::Vector read_vector(const std::string& path) {
  return linalg::as_vector(linalg::read_matrix_csv(std::filesystem::path(path)));
}

double parse_number(std::string_view text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad number '" + std::string(text) + "' in " + what);
  }
  return v;
}

}  // namespace

std::vector<double> parse_sigma_grid(const std::string& spec) {
  const auto a = spec.find(':');
  const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
  if (b == std::string::npos || spec.find(':', b + 1) != std::string::npos) {
    throw std::invalid_argument("--sigma-grid must be start:stop:count, got '" + spec + "'");
  }
  const std::string_view sv(spec);
  const double start = parse_number(sv.substr(0, a), "--sigma-grid");
  const double stop = parse_number(sv.substr(a + 1, b - a - 1), "--sigma-grid");
  const double count = parse_number(sv.substr(b + 1), "--sigma-grid");
  if (count < 1 || count != std::floor(count)) throw std::invalid_argument("--sigma-grid count must be a positive integer");
  return sim::log_grid(start, stop, static_cast<int>(count));
}

void run_specfun(const SpecfunOptions& o, std::ostream& final_out) {
  using namespace specfun;
  const std::string& fn = o.fn;
  std::ostringstream out;
  auto plain = [&](double v) { out << fn << ',' << format_double(v) << ",\n"; };
  if (fn == "log_gamma") plain(log_gamma(need(o.x, fn, "--x")));
  else if (fn == "upper_gamma") plain(regularized_upper_gamma(need(o.s, fn, "--s"), need(o.x, fn, "--x")));
  else if (fn == "lower_gamma") plain(regularized_lower_gamma(need(o.s, fn, "--s"), need(o.x, fn, "--x")));
  else if (fn == "ibeta") plain(regularized_incomplete_beta(need(o.a, fn, "--a"), need(o.b, fn, "--b"), need(o.x, fn, "--x")));
  else if (fn == "bessel_i") plain(bessel_i(need(o.nu, fn, "--nu"), need(o.t, fn, "--t")));
  else if (fn == "bessel_i_scaled") plain(bessel_i_scaled(need(o.nu, fn, "--nu"), need(o.t, fn, "--t")));
  else if (fn == "log_bessel_i") plain(log_bessel_i(need(o.nu, fn, "--nu"), need(o.t, fn, "--t")));
  else if (fn == "marcum") {
    out << tail_row(fn, marcum_q(MarcumOrder(need(o.order, fn, "--order")), need(o.alpha, fn, "--alpha"),
                                 need(o.beta, fn, "--beta")))
        << '\n';
  } else if (fn == "ncx2_cdf") {
    out << tail_row(fn, noncentral_chi2_cdf(need(o.k, fn, "--k"), need(o.lambda, fn, "--lambda"), need(o.x, fn, "--x")))
        << '\n';
  } else if (fn == "ncx2_sf") {
    out << tail_row(fn, noncentral_chi2_sf(need(o.k, fn, "--k"), need(o.lambda, fn, "--lambda"), need(o.x, fn, "--x")))
        << '\n';
  } else if (fn == "ncf_sf") {
    out << tail_row(fn, noncentral_f_sf(need(o.d1, fn, "--d1"), need(o.d2, fn, "--d2"), need(o.lambda, fn, "--lambda"),
                                        need(o.x, fn, "--x")))
        << '\n';
  } else if (fn == "norm_tail") {
    if (!o.m) throw std::invalid_argument("--fn norm_tail requires --m");
    out << tail_row(fn, norm_tail_prob(need(o.x_norm, fn, "--x-norm"), need(o.sigma, fn, "--sigma"),
                                       need(o.eps, fn, "--eps"), *o.m))
        << '\n';
  }
  final_out << "fn,value,abs_error_bound\n" << out.str();
}

void run_bounds(const BoundsOptions& o, std::ostream& out) {
  if (o.x.empty() != o.y.empty()) throw std::invalid_argument("--x and --y must be given together");
  const linalg::DenseMatrix b = linalg::read_matrix_csv(std::filesystem::path(o.matrix));
  const linalg::Vector c = read_vector(o.column);
  if (c.size() != b.rows()) throw linalg::DimensionError("column length differs from the row count of the matrix");
  // Fails with RankDeficientError (exit 2) when B is not of full column rank.
  linalg::householder_qr(b);

  std::vector<bounds::BoundReport> reports;
  if (!o.x.empty()) {
    const linalg::Vector x = read_vector(o.x);
    const linalg::Vector y = read_vector(o.y);
    reports.push_back(bounds::kappa_bound_general(b, x, y, o.gamma));
    double eps = 0.0;
    if (o.eps) {
      eps = *o.eps;
    } else {
      linalg::Vector sum(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) sum[i] = x[i] + y[i];
      const double ratio = linalg::norm2(linalg::transpose_times(b, y)) / linalg::norm2(sum);
      eps = std::sqrt(1.0 + 4.0 * ratio * ratio);
    }
    reports.push_back(bounds::kappa_bound_eps(b, x, y, eps));
  }
  const auto mm = bounds::minmax_singular_bounds(b, c, o.gamma);
  reports.push_back(mm.sigma_max_upper);
  reports.push_back(mm.sigma_min_lower);
  reports.push_back(bounds::kappa_bound_via_q(b, c, o.gamma));
  reports.push_back(bounds::kappa_bound_unit_columns(b, c, o.gamma));
  const double c_norm = linalg::norm2(c);
  if (c_norm > 0.0) {
    linalg::Vector q = c;
    for (auto& v : q) v /= c_norm;
    reports.push_back(bounds::kappa_bound_unit_q(b, q));
  }

  std::optional<bounds::ResidualIdentityCheck> check;
  std::string check_note;
  try {
    check = bounds::liesen_residual_identity_check(b, c, o.gamma);
  } catch (const linalg::RankDeficientError&) {
    check_note = "[B, c] is rank deficient; identity not evaluated";
  }

  if (o.format == "csv") {
    out << bounds::bound_report_csv_header() << '\n';
    for (const auto& r : reports) out << bounds::to_csv_row(r) << '\n';
    out << '\n' << "check,direct,singular_product,orthonormal_product,max_discrepancy\n";
    if (check) {
      out << "residual_identity," << format_double(check->direct) << ',' << format_double(check->singular_product)
          << ',' << format_double(check->orthonormal_product) << ',' << format_double(check->max_discrepancy) << '\n';
    } else {
      out << "residual_identity,,,,\n";
    }
    return;
  }
  for (const auto& r : reports) {
    bounds::write_text(out, r);
    out << '\n';
  }
  out << "residual_identity_check\n";
  if (check) {
    out << "  direct:              " << format_double(check->direct) << '\n'
        << "  singular_product:    " << format_double(check->singular_product) << '\n'
        << "  orthonormal_product: " << format_double(check->orthonormal_product) << '\n'
        << "  max_discrepancy:     " << format_double(check->max_discrepancy) << '\n';
  } else {
    out << "  note: " << check_note << '\n';
  }
}

void run_sim_norm_tail(const SimOptions& o, std::ostream& out) {
  if (!o.figures_dir.empty()) {
    const std::filesystem::path dir(o.figures_dir);
    std::filesystem::create_directories(dir);
    const auto grid = sim::log_grid(1e-3, 1.0, 20);
    const std::pair<const char*, double> figures[] = {{"fig1_norm_tail.csv", 0.9}, {"fig2_norm_tail.csv", 1.5}};
    for (const auto& [name, eps] : figures) {
      with_output((dir / name).string(), out, [&](std::ostream& os) {
        os << "sigma,m,x_norm,eps," << sim::summary_csv_header() << '\n';
        for (int m : {10, 100}) {
          sim::ExperimentConfig cfg = o.cfg;
          cfg.m = m;
          cfg.x_norm = 1.0;
          cfg.eps = eps;
          cfg.seed = sim::derive_seed(o.cfg.seed, static_cast<std::uint64_t>(m), eps == 0.9 ? 1 : 2);
          const auto points = sim::norm_tail_sweep(cfg, grid);
          std::ostringstream body;
          sim::write_sweep_csv(body, cfg, points);
          const std::string text = body.str();
          os << text.substr(text.find('\n') + 1);
        }
      });
      out << "wrote " << (dir / name).string() << '\n';
    }
    return;
  }
  const std::vector<double> grid = o.sigma_grid.empty() ? std::vector<double>{o.cfg.sigma} : parse_sigma_grid(o.sigma_grid);
  const auto points = sim::norm_tail_sweep(o.cfg, grid);
  with_output(o.out, out, [&](std::ostream& os) { sim::write_sweep_csv(os, o.cfg, points); });
}

void run_sim_projection(const SimOptions& o, std::ostream& out) {
  const auto rep = sim::projection_noise_experiment(o.cfg);
  const auto& c = o.cfg;
  with_output(o.out, out, [&](std::ostream& os) {
    os << "m,n,sigma,x_norm,eps,cov_max_deviation,cov_tolerance,cov_ok," << sim::summary_csv_header() << '\n';
    os << c.m << ',' << c.n << ',' << format_double(c.sigma) << ',' << format_double(c.x_norm) << ','
       << format_double(c.eps) << ',' << format_double(rep.max_deviation) << ',' << format_double(rep.tolerance)
       << ',' << (rep.covariance_ok ? "true" : "false") << ',' << sim::to_csv_row(rep.tail) << '\n';
  });
}

void run_sim_ls(const SimOptions& o, std::ostream& out) {
  const auto& c = o.cfg;
  const auto squared = sim::ls_residual_experiment(c);
  const auto unsquared = sim::with_theory(
      squared, bounds::residual_tail_prob_unsquared(c.m, c.n, c.x_norm, c.sigma, c.eps1, c.eps2).value);
  with_output(o.out, out, [&](std::ostream& os) {
    os << "m,n,sigma,x_norm,eps1,eps2,form," << sim::summary_csv_header() << '\n';
    const std::string prefix = std::to_string(c.m) + ',' + std::to_string(c.n) + ',' + format_double(c.sigma) + ',' +
                               format_double(c.x_norm) + ',' + format_double(c.eps1) + ',' + format_double(c.eps2);
    os << prefix << ",squared," << sim::to_csv_row(squared) << '\n';
    os << prefix << ",unsquared," << sim::to_csv_row(unsquared) << '\n';
  });
}

void run_sim_qr_noise(const SimOptions& o, std::ostream& out) {
  const auto& c = o.cfg;
  sim::NoisyQrReport rep;
  int m = c.m;
  if (o.input.empty()) {
    rep = sim::noisy_qr_experiment(c);
  } else {
    const auto input = linalg::read_matrix_csv(std::filesystem::path(o.input));
    m = static_cast<int>(input.rows());
    rep = sim::noisy_qr_experiment(c, input);
  }
  with_output(o.out, out, [&](std::ostream& os) {
    os << "m,n,sigma,eps1,eps2,kappa_product_bound,probability_lower_bound,trials_run,excluded,violations,"
          "violation_freq,allowance,stderr,max_kappa\n";
    const std::size_t n = rep.chain.per_step_factors.size() + 1;
    os << m << ',' << n << ',' << format_double(c.sigma) << ',' << format_double(c.eps1) << ','
       << format_double(c.eps2) << ',' << format_double(rep.chain.kappa_product_bound) << ','
       << format_double(rep.chain.probability_lower_bound) << ',' << rep.trials_run << ',' << rep.excluded << ','
       << rep.violations.events << ',' << format_double(rep.violations.empirical_prob) << ','
       << format_double(rep.violations.theory_prob) << ',' << format_double(rep.violations.std_error) << ','
       << format_double(rep.max_kappa) << '\n';
  });
}

}  // namespace condgrowth::cli::detail
