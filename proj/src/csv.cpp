#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dfwm/errors.hpp"
#include "dfwm/sweep.hpp"

namespace dfwm::sweep {

namespace {

const char* const kColumns[] = {"coupling_l",   "gain",   "mq_optimal_db",   "mq_phase_db",
                                "mid_db",       "above_threshold", "expansion_valid"};

std::string format_double(double v)
{
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

double parse_double(const std::string& s)
{
  if (s == "nan") return std::nan("");
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");
  return v;
}

std::vector<std::string> split_record(const std::string& line)
{
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

}  // namespace

std::string csv_field(const std::string& value)
{
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_csv(const Table& table)
{
  std::string out = csv_field(table.axis_name);
  for (const char* c : kColumns) out += std::string(",") + c;
  out += "\r\n";
  for (const Row& r : table.rows) {
    out += format_double(r.axis_value) + ',' + format_double(r.coupling_l) + ',' +
           format_double(r.gain) + ',' + format_double(r.mq_optimal_db) + ',' +
           format_double(r.mq_phase_db) + ',' + format_double(r.mid_db) + ',' +
           (r.above_threshold ? "1" : "0") + ',' + (r.expansion_valid ? "1" : "0") + "\r\n";
  }
  return out;
}

void emit_csv(const Table& table, const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_csv(table);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Table parse_csv(const std::string& text)
{
  std::istringstream in(text);
  std::string line;
  Table table;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_record(line);
    if (fields.size() != 8) throw ConfigError("expected 8 CSV fields", number);
    if (number == 1) {
      table.axis_name = fields[0];
      continue;
    }
    try {
      Row r;
      r.axis_value = parse_double(fields[0]);
      r.coupling_l = parse_double(fields[1]);
      r.gain = parse_double(fields[2]);
      r.mq_optimal_db = parse_double(fields[3]);
      r.mq_phase_db = parse_double(fields[4]);
      r.mid_db = parse_double(fields[5]);
      r.above_threshold = fields[6] == "1";
      r.expansion_valid = fields[7] == "1";
      table.rows.push_back(r);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad CSV value: ") + e.what(), number);
    }
  }
  return table;
}

}  // namespace dfwm::sweep
