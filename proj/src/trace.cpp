#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hyplc/number_format.hpp"
#include "hyplc/sim.hpp"

namespace hyplc {

int Trace::column(std::string_view name) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Trace read_trace(std::istream& in) {
  Trace t;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::vector<std::string> cells = split(body);
    if (!have_header) {
      t.columns = cells;
      have_header = true;
      if (t.column("cycle") < 0) {
        throw Error(ErrorKind::kSchemaError, "trace header lacks the 'cycle' column", {lineno, 1});
      }
      continue;
    }
    if (cells.size() != t.columns.size()) {
      throw Error(ErrorKind::kSchemaError,
                  "row has " + std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(t.columns.size()),
                  {lineno, 1});
    }
    std::vector<double> row;
    for (size_t i = 0; i < cells.size(); ++i) {
      double v = 0;
      if (!parse_number(cells[i], v)) {
        throw Error(ErrorKind::kSchemaError, "not a number in column '" + t.columns[i] + "': '" + cells[i] + "'",
                    {lineno, 1});
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw Error(ErrorKind::kSchemaError, "trace is empty");
  return t;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open '" + path + "'");
  return read_trace(in);
}

void write_trace(std::ostream& out, const Trace& t) {
  for (size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << "\n";
  }
}

}  // namespace hyplc
