#include <ostream>

#include "condgrowth/matrix_csv.hpp"
#include "condgrowth/sim.hpp"

namespace condgrowth::sim {

using linalg::format_double;

std::string summary_csv_header() { return "trials,events,empirical,theory,stderr,z"; }

std::string to_csv_row(const TrialSummary& s) {
  return std::to_string(s.trials) + ',' + std::to_string(s.events) + ',' + format_double(s.empirical_prob) + ',' +
         format_double(s.theory_prob) + ',' + format_double(s.std_error) + ',' + format_double(s.z_score);
}

void write_sweep_csv(std::ostream& out, const ExperimentConfig& cfg, std::span<const SweepPoint> points) {
  out << "sigma,m,x_norm,eps," << summary_csv_header() << '\n';
  for (const auto& p : points) {
    out << format_double(p.sigma) << ',' << cfg.m << ',' << format_double(cfg.x_norm) << ','
        << format_double(cfg.eps) << ',' << to_csv_row(p.summary) << '\n';
  }
}

}  // namespace condgrowth::sim
