#include "output.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

namespace perconet::cli {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const std::string& prefix, const nlohmann::json& config, CsvTable table,
          const nlohmann::json& summary) {
  table.add_comment("config: " + config.dump());
  const std::string csv_path = prefix + ".csv";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + csv_path);
  table.write(csv);

  nlohmann::json side;
  side["config"] = config;
  side["created"] = utc_timestamp();
  side["csv"] = csv_path;
  side["summary"] = summary;
  const std::string json_path = prefix + ".json";
  std::ofstream out(json_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + json_path);
  out << side.dump(2) << "\n";
}

}  // namespace perconet::cli
