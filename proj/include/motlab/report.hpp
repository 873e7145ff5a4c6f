#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace motlab {

using Json = nlohmann::ordered_json;

// Structured record of one harness run. Rows of one report share a fixed key
// set; the CSV header is taken from the first row. verdict is the conjunction
// of the rows' "pass" flags.
struct ExperimentReport {
  std::string name;
  Json params = Json::object();
  std::vector<Json> rows;
  bool verdict = false;
  std::int64_t runtime_ms = 0;

  // Recomputes verdict from the rows' "pass" entries.
  void finalize();

  Json to_json() const;
  std::string to_json_string() const;  // 2-space indent, trailing newline
  std::string to_csv() const;          // header row + one line per row
};

// Shortest round-trip decimal representation (same in CSV and JSON output).
std::string format_double(double v);

}  // namespace motlab
