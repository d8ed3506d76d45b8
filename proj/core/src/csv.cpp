#include "perconet/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace perconet {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::invalid_argument("row width does not match the header");
  rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream& out) const {
  for (const auto& c : comments_) out << "# " << c << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

std::string CsvTable::str() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

CsvTable theta_table(const ThetaEstimate& est) {
  CsvTable t({"p", "theta_mean", "theta_stderr", "n_samples"});
  for (std::size_t i = 0; i < est.p.size(); ++i) {
    t.add_row({format_real(est.p[i]), format_real(est.mean[i]), format_real(est.stderr_[i]),
               std::to_string(est.samples)});
  }
  return t;
}

}  // namespace perconet
