#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "perconet/percolation.hpp"

namespace perconet {

/// Shortest text that reads back as the same double ("%.17g").
std::string format_real(double v);

/// Comma-separated table with a mandatory header, '.' decimals and '\n' line endings.
/// Optional comment lines ("# ...") precede the header.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_comment(std::string line) { comments_.push_back(std::move(line)); }
  void add_row(std::vector<std::string> row);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::vector<std::string> comments_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// p, theta_mean, theta_stderr, n_samples
CsvTable theta_table(const ThetaEstimate& est);

}  // namespace perconet
