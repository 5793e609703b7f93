#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace covreg {

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; ParseError when absent.
  std::size_t column(const std::string &name, const std::string &path) const;
};

/// Comma-delimited text with a header row. Fields are trimmed; quoting is
/// not supported. Blank lines are skipped.
CsvTable read_csv(const std::string &path);

/// Finite double from a cell; ParseError naming file, row (1-based data row)
/// and column otherwise.
double parse_cell(const std::string &cell, const std::string &path, std::size_t row,
                  const std::string &column);

/// Writes the whole file to path.tmp and renames it over path.
void write_file_atomic(const std::string &path, const std::string &content);

std::vector<std::string> split(const std::string &s, char sep);
std::string trim(const std::string &s);

/// 17 significant digits, enough to round-trip a double.
std::string format_double(double v);

} // namespace covreg
