#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "perconet/csv.hpp"

namespace perconet::cli {

/// Bad flags or config values. Exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes <prefix>.csv and the <prefix>.json sidecar. The CSV carries the run config
/// as a comment; the creation time lives only in the sidecar.
void emit(const std::string& prefix, const nlohmann::json& config, CsvTable table,
          const nlohmann::json& summary);

std::string utc_timestamp();

}  // namespace perconet::cli
