#include "motlab/report.hpp"

#include <charconv>
#include <stdexcept>

namespace motlab {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void ExperimentReport::finalize() {
  verdict = true;
  for (const Json &row : rows)
    if (row.contains("pass") && !row.at("pass").get<bool>()) verdict = false;
}

Json ExperimentReport::to_json() const {
  Json j;
  j["name"] = name;
  j["params"] = params;
  j["rows"] = rows;
  j["verdict"] = verdict;
  j["runtime_ms"] = runtime_ms;
  return j;
}

std::string ExperimentReport::to_json_string() const { return to_json().dump(2) + "\n"; }

std::string ExperimentReport::to_csv() const {
  if (rows.empty()) return "";
  std::string out;
  bool first = true;
  for (const auto &item : rows.front().items()) {
    if (!first) out += ',';
    out += item.key();
    first = false;
  }
  out += '\n';
  for (const Json &row : rows) {
    first = true;
    for (const auto &item : row.items()) {
      if (!first) out += ',';
      first = false;
      const Json &v = item.value();
      if (v.is_boolean())
        out += v.get<bool>() ? "true" : "false";
      else if (v.is_number_float())
        out += format_double(v.get<double>());
      else if (v.is_number_integer())
        out += std::to_string(v.get<long long>());
      else if (v.is_string())
        out += v.get<std::string>();
      else
        throw std::logic_error("unsupported CSV cell type");
    }
    out += '\n';
  }
  return out;
}

}  // namespace motlab
