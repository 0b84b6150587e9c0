#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace quanto::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string model_hash(const KeyValues& echo) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [k, v] : echo) {
    for (char c : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string render_csv(const Report& r) {
  std::ostringstream os;
  os << "# command: " << r.command << "\n";
  os << "# seed: " << r.seed << "\n";
  os << "# model_hash: " << model_hash(r.echo) << "\n";
  for (const auto& [k, v] : r.echo) os << "# config: " << k << " = " << v << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json doc;
  doc["command"] = r.command;
  doc["seed"] = r.seed;
  doc["model_hash"] = model_hash(r.echo);
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.echo) doc["config"][k] = v;
  doc["columns"] = r.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) {
      const std::string& cell = row[i];
      if (cell.empty()) {
        obj[r.columns[i]] = nullptr;
        continue;
      }
      char* end = nullptr;
      const double x = std::strtod(cell.c_str(), &end);
      if (end && *end == '\0' && std::isfinite(x)) {
        obj[r.columns[i]] = x;
      } else {
        obj[r.columns[i]] = cell;
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string render(const Report& r, OutputFormat format) {
  return format == OutputFormat::Json ? render_json(r) : render_csv(r);
}

}  // namespace quanto::cli
