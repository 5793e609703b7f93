#include "covreg/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace covreg {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    out.push_back(trim(cur));
  }
  if (!s.empty() && s.back() == sep) {
    out.emplace_back();
  }
  return out;
}

std::size_t CsvTable::column(const std::string &name, const std::string &path) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      return i;
    }
  }
  throw ParseError(path + ": missing column '" + name + "'");
}

CsvTable read_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  CsvTable t;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    auto fields = split(line, ',');
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw ParseError(path + ": line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, header has " +
                       std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(fields));
  }
  if (!have_header) {
    throw ParseError(path + ": empty file");
  }
  return t;
}

double parse_cell(const std::string &cell, const std::string &path, std::size_t row,
                  const std::string &column) {
  const std::string where =
      path + ": row " + std::to_string(row) + ", column '" + column + "'";
  if (cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan") {
    throw ParseError(where + ": missing value");
  }
  char *end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || !std::isfinite(v)) {
    throw ParseError(where + ": cannot parse '" + cell + "' as a number");
  }
  return v;
}

void write_file_atomic(const std::string &path, const std::string &content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp);
    }
    out << content;
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed for " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace covreg
