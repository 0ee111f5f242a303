#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace valuesched {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal form of a double ("100", "0.5", "1256.2").
// Used for every number written to CSV, genome strings and reports so
// that identical runs produce byte-identical files.
std::string fmt_double(double value);

std::string read_file(const std::string& path);           // throws IoError
void write_file(const std::string& path, std::string_view content);  // throws IoError

}  // namespace valuesched
