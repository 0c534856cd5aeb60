#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

// Deterministic CSV emission: header row, comma separators, '.' decimal
// point, '\n' line ends. Doubles are printed in shortest round-trip form, so
// emitted values equal the library results bit-for-bit after re-parsing and
// identical inputs yield byte-identical files.

namespace kbest::cli {

std::string format_double(double v);  // shortest round-trip; inf/-inf/nan
std::string format_u64(std::uint64_t v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);  // size must match header
  void write(std::ostream& os) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes to `path`, or to stdout when path is empty. Returns false (after
// printing to stderr) when the file cannot be opened.
bool write_csv(const CsvWriter& csv, const std::string& path);

}  // namespace kbest::cli
