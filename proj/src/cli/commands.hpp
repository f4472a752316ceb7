#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "condgrowth/sim.hpp"

namespace condgrowth::cli::detail {

struct SpecfunOptions {
  std::string fn;
  std::optional<double> x, s, a, b, nu, t, order, alpha, beta, k, lambda, d1, d2, x_norm, sigma, eps;
  std::optional<int> m;
};

struct BoundsOptions {
  std::string matrix;
  std::string column;
  std::string x;
  std::string y;
  double gamma = 1.0;
  std::optional<double> eps;
  std::string format = "text";
};

struct SimOptions {
  sim::ExperimentConfig cfg;
  std::string sigma_grid;
  std::string figures_dir;
  std::string input;
  std::string out;
};

struct ErrataOptions {
  long trials = 100'000;
  std::uint64_t seed = 1;
  int workers = 1;
};

void run_specfun(const SpecfunOptions& opt, std::ostream& out);
void run_bounds(const BoundsOptions& opt, std::ostream& out);
void run_sim_norm_tail(const SimOptions& opt, std::ostream& out);
void run_sim_projection(const SimOptions& opt, std::ostream& out);
void run_sim_ls(const SimOptions& opt, std::ostream& out);
void run_sim_qr_noise(const SimOptions& opt, std::ostream& out);
void run_errata_report(const ErrataOptions& opt, std::ostream& out);

/// "start:stop:count", log-spaced.
std::vector<double> parse_sigma_grid(const std::string& spec);

}  // namespace condgrowth::cli::detail
