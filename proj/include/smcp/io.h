#pragma once

// Instance file formats. All indices in files are 1-based.
//
//   orlib   "m n", n costs, then per row: count and that many column indices.
//           Unit demands, one singleton block with cap 1 per column.
//   rail    "m n", then per column: cost, count and that many row indices.
//           Unit demands, singleton blocks.
//   gub     "m n k", n costs, m demands, per row: count and column indices,
//           per block: cap, size and column indices.
//
// Tokens are separated by any whitespace. Files ending in .gz are
// decompressed transparently.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smcp/model.h"

namespace smcp {

enum class Format { OrLib, Rail, Gub };

const char* to_string(Format format);
// Accepts "orlib", "rail" and "gub". Throws std::invalid_argument otherwise.
Format parse_format(const std::string& name);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// The parsers throw ParseError on malformed input and on any violation
// reported by validate().
Instance parse_orlib_scp(std::string_view text);
Instance parse_rail(std::string_view text);
Instance parse_gub(std::string_view text);
Instance parse_instance(std::string_view text, Format format);

std::string serialize_gub(const Instance& inst);

// Reads a whole file, gunzipping when the name ends in .gz. Throws
// std::runtime_error when the file cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

Instance load_instance(const std::string& path, Format format);

// A list of 1-based column indices, e.g. "2 3". Throws ParseError on a
// malformed token or an index outside [1, n].
Solution parse_solution(std::string_view text, int n);

}  // namespace smcp
