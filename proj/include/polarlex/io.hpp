#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace polarlex::io {

// FIPS 180-4 SHA-256, hex digest.
std::string sha256_hex(std::string_view data);

std::string read_file(const std::string& path);  // throws DataError if absent
bool file_exists(const std::string& path);
std::string sha256_file(const std::string& path);

// Write-temp-then-rename so readers never observe a partial file.
void atomic_write_file(const std::string& path, std::string_view content);

struct JsonlStats {
  std::uint64_t lines = 0;      // non-blank lines seen
  std::uint64_t malformed = 0;  // parse failures + rejected records
};

// Streams a .jsonl file line by line. `fn` returns false to reject a record
// (counted as malformed alongside parse errors). Blank lines are skipped.
JsonlStats for_each_jsonl(const std::string& path,
                          const std::function<bool(const nlohmann::json&)>& fn);

// Fixed-format float for reports: shortest round-trippable representation.
std::string format_double(double v);
// Fixed 6-decimal form for human-facing CSV columns.
std::string format_fixed(double v, int decimals = 6);

std::string csv_escape(const std::string& field);

}  // namespace polarlex::io
