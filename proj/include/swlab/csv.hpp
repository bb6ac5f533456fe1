#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swlab {

// Numeric formatting used by every CSV surface: %.12g, enough digits for a
// byte-identical rerun without printing noise past double precision.
std::string format_g(double v);

// Minimal comma-separated writer; cells containing a comma, quote, or
// newline are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads a CSV written by CsvWriter (quoted cells supported).
CsvTable read_csv(const std::string& path);

}  // namespace swlab
