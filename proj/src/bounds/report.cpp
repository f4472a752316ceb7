#include <ostream>
#include <sstream>

#include "condgrowth/bounds.hpp"
#include "condgrowth/matrix_csv.hpp"

namespace condgrowth::bounds {

namespace {

using linalg::format_double;

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

const char* side_name(BoundSide s) { return s == BoundSide::upper ? "upper" : "lower"; }

}  // namespace

std::string bound_report_csv_header() {
  return "name,side,bound_value,actual_value,preconditions_met,holds,sigma_max,sigma_min,gamma,sum_norm,"
         "bty_norm,c_norm,r_norm,eps,explanation";
}

std::string to_csv_row(const BoundReport& r) {
  std::ostringstream os;
  const auto& in = r.inputs;
  os << r.name << ',' << side_name(r.side) << ',' << format_double(r.bound_value) << ',' << opt(r.actual_value)
     << ',' << (r.preconditions_met ? "true" : "false") << ',' << (r.holds() ? "true" : "false") << ','
     << opt(in.sigma_max) << ',' << opt(in.sigma_min) << ',' << opt(in.gamma) << ',' << opt(in.sum_norm) << ','
     << opt(in.bty_norm) << ',' << opt(in.c_norm) << ',' << opt(in.r_norm) << ',' << opt(in.eps) << ','
     << quoted(r.explanation);
  return os.str();
}

void write_text(std::ostream& out, const BoundReport& r) {
  out << r.name << " (" << side_name(r.side) << " bound)\n";
  out << "  bound:         " << format_double(r.bound_value) << '\n';
  out << "  actual:        " << (r.actual_value ? format_double(*r.actual_value) : std::string("n/a")) << '\n';
  out << "  preconditions: " << (r.preconditions_met ? "met" : "not met") << '\n';
  out << "  holds:         " << (r.holds() ? "yes" : "NO") << '\n';
  const auto& in = r.inputs;
  const std::pair<const char*, const std::optional<double>*> fields[] = {
      {"sigma_max", &in.sigma_max}, {"sigma_min", &in.sigma_min}, {"gamma", &in.gamma},
      {"sum_norm", &in.sum_norm},   {"bty_norm", &in.bty_norm},   {"c_norm", &in.c_norm},
      {"r_norm", &in.r_norm},       {"eps", &in.eps}};
  out << "  inputs:       ";
  for (const auto& [name, v] : fields) {
    if (*v) out << ' ' << name << '=' << format_double(**v);
  }
  out << '\n';
  if (!r.explanation.empty()) out << "  note:          " << r.explanation << '\n';
}

}  // namespace condgrowth::bounds
