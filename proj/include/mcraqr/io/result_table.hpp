#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mcraqr/errors.hpp"

namespace mcraqr::io {

// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// A column-oriented result table rendered as CSV. Headers carry the unit in
// brackets ("snr[dB]"); the trailing comment line carries a content hash so
// byte-identity across runs is easy to assert.
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> headers)
      : headers_(std::move(headers)) {
    if (headers_.empty()) throw SchemaError("ResultTable: no columns");
  }

  void add_row(const std::vector<double>& row) {
    if (row.size() != headers_.size())
      throw SchemaError("ResultTable: row width mismatch");
    rows_.push_back(row);
  }

  std::string render() const {
    std::string out;
    for (std::size_t c = 0; c < headers_.size(); ++c) {
      if (c) out += ',';
      out += headers_[c];
    }
    out += '\n';
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ',';
        out += format_double(row[c]);
      }
      out += '\n';
    }
    char hash[32];
    const auto res = std::to_chars(hash, hash + sizeof(hash), fnv1a(out), 16);
    out += "# content-hash: ";
    out.append(hash, res.ptr);
    out += '\n';
    return out;
  }

  void write(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path.string());
    f << render();
    if (!f) throw IoError("short write to " + path.string());
  }

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<double>> rows_;
};

} // namespace mcraqr::io
