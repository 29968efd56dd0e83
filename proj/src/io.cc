#include "smcp/io.h"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace smcp {

const char* to_string(Format format) {
  switch (format) {
    case Format::OrLib: return "orlib";
    case Format::Rail: return "rail";
    case Format::Gub: return "gub";
  }
  return "?";
}

Format parse_format(const std::string& name) {
  if (name == "orlib") return Format::OrLib;
  if (name == "rail") return Format::Rail;
  if (name == "gub") return Format::Gub;
  throw std::invalid_argument("unknown format: " + name);
}

namespace {

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  int line() const { return line_; }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  std::int64_t integer(const char* what) {
    skip_space();
    if (pos_ >= text_.size()) {
      throw ParseError(line_, std::string("unexpected end of input, expected ") + what);
    }
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    const std::string_view token = text_.substr(begin, pos_ - begin);
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size()) {
      throw ParseError(line_, std::string("invalid ") + what + " '" + std::string(token) + "'");
    }
    return value;
  }

  int count(const char* what, std::int64_t limit) {
    const std::int64_t v = integer(what);
    if (v < 0 || v > limit) {
      throw ParseError(line_, std::string(what) + " " + std::to_string(v) + " out of range");
    }
    return static_cast<int>(v);
  }

  // A 1-based index in [1, limit], returned 0-based.
  int index(const char* what, int limit) {
    const std::int64_t v = integer(what);
    if (v < 1 || v > limit) {
      throw ParseError(line_, std::string(what) + " index out of range: " + std::to_string(v));
    }
    return static_cast<int>(v - 1);
  }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  }
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

constexpr std::int64_t kMaxDimension = 1 << 30;

Cost read_cost(Tokenizer& in) {
  const std::int64_t c = in.integer("cost");
  if (c <= 0) throw ParseError(in.line(), "cost must be positive");
  return c;
}

void expect_end(Tokenizer& in) {
  if (!in.at_end()) throw ParseError(in.line(), "trailing data after instance");
}

Instance finish(InstanceData data, int line) {
  for (auto& cols : data.row_cols) std::sort(cols.begin(), cols.end());
  for (auto& rows : data.col_rows) std::sort(rows.begin(), rows.end());
  const auto problems = validate(data);
  if (!problems.empty()) throw ParseError(line, problems.front().message);
  return Instance(data);
}

void singleton_blocks(InstanceData& data) {
  const int n = static_cast<int>(data.cost.size());
  data.blocks.resize(n);
  for (int j = 0; j < n; ++j) data.blocks[j] = Block{{j}, 1};
}

// Reads m row lists of column indices, filling both directions.
void read_rows(Tokenizer& in, InstanceData& data, int m, int n) {
  data.row_cols.assign(m, {});
  data.col_rows.assign(n, {});
  for (int i = 0; i < m; ++i) {
    const int size = in.count("row size", n);
    data.row_cols[i].reserve(size);
    for (int k = 0; k < size; ++k) {
      const int j = in.index("column", n);
      data.row_cols[i].push_back(j);
      data.col_rows[j].push_back(i);
    }
  }
}

}  // namespace

Instance parse_orlib_scp(std::string_view text) {
  Tokenizer in(text);
  if (in.at_end()) throw ParseError(in.line(), "empty input");
  InstanceData data;
  const int m = in.count("row count", kMaxDimension);
  const int n = in.count("column count", kMaxDimension);
  data.cost.resize(n);
  for (int j = 0; j < n; ++j) data.cost[j] = read_cost(in);
  data.demand.assign(m, 1);
  read_rows(in, data, m, n);
  expect_end(in);
  singleton_blocks(data);
  return finish(std::move(data), in.line());
}

Instance parse_rail(std::string_view text) {
  Tokenizer in(text);
  if (in.at_end()) throw ParseError(in.line(), "empty input");
  InstanceData data;
  const int m = in.count("row count", kMaxDimension);
  const int n = in.count("column count", kMaxDimension);
  data.cost.resize(n);
  data.col_rows.assign(n, {});
  data.row_cols.assign(m, {});
  for (int j = 0; j < n; ++j) {
    data.cost[j] = read_cost(in);
    const int size = in.count("column size", m);
    if (size == 0) throw ParseError(in.line(), "column " + std::to_string(j + 1) + " covers no row");
    for (int k = 0; k < size; ++k) {
      const int i = in.index("row", m);
      data.col_rows[j].push_back(i);
      data.row_cols[i].push_back(j);
    }
  }
  expect_end(in);
  data.demand.assign(m, 1);
  singleton_blocks(data);
  return finish(std::move(data), in.line());
}

Instance parse_gub(std::string_view text) {
  Tokenizer in(text);
  if (in.at_end()) throw ParseError(in.line(), "empty input");
  InstanceData data;
  const int m = in.count("row count", kMaxDimension);
  const int n = in.count("column count", kMaxDimension);
  const int k = in.count("block count", n);
  data.cost.resize(n);
  for (int j = 0; j < n; ++j) data.cost[j] = read_cost(in);
  data.demand.resize(m);
  for (int i = 0; i < m; ++i) data.demand[i] = in.count("demand", kMaxDimension);
  read_rows(in, data, m, n);
  data.blocks.resize(k);
  for (int h = 0; h < k; ++h) {
    data.blocks[h].cap = in.count("block cap", n);
    const int size = in.count("block size", n);
    data.blocks[h].columns.reserve(size);
    for (int t = 0; t < size; ++t) data.blocks[h].columns.push_back(in.index("column", n));
  }
  expect_end(in);
  return finish(std::move(data), in.line());
}

Instance parse_instance(std::string_view text, Format format) {
  switch (format) {
    case Format::OrLib: return parse_orlib_scp(text);
    case Format::Rail: return parse_rail(text);
    case Format::Gub: return parse_gub(text);
  }
  throw std::invalid_argument("unknown format");
}

std::string serialize_gub(const Instance& inst) {
  std::ostringstream out;
  out << inst.num_rows() << ' ' << inst.num_cols() << ' ' << inst.num_blocks() << '\n';
  auto list = [&out](std::span<const auto> values, auto transform) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (k > 0) out << ' ';
      out << transform(values[k]);
    }
  };
  auto same = [](auto v) { return v; };
  auto one_based = [](int v) { return v + 1; };
  list(inst.costs(), same);
  out << '\n';
  list(inst.demands(), same);
  out << '\n';
  for (int i = 0; i < inst.num_rows(); ++i) {
    const auto cols = inst.cols_of(i);
    out << cols.size();
    if (!cols.empty()) out << ' ';
    list(cols, one_based);
    out << '\n';
  }
  for (int h = 0; h < inst.num_blocks(); ++h) {
    const auto cols = inst.block_columns(h);
    out << inst.cap(h) << ' ' << cols.size();
    if (!cols.empty()) out << ' ';
    list(cols, one_based);
    out << '\n';
  }
  return out.str();
}

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         std::string_view(s).substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string read_file(const std::string& path) {
  if (ends_with(path, ".gz")) {
    gzFile file = gzopen(path.c_str(), "rb");
    if (!file) throw std::runtime_error("cannot open " + path);
    std::string data;
    char buffer[1 << 16];
    int got;
    while ((got = gzread(file, buffer, sizeof buffer)) > 0) data.append(buffer, got);
    const bool failed = got < 0;
    gzclose(file);
    if (failed) throw std::runtime_error("cannot decompress " + path);
    return data;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path);
  return buffer.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path);
}

Instance load_instance(const std::string& path, Format format) {
  return parse_instance(read_file(path), format);
}

Solution parse_solution(std::string_view text, int n) {
  Tokenizer in(text);
  Solution x(n);
  while (!in.at_end()) x.set(in.index("column", n), true);
  return x;
}

}  // namespace smcp
