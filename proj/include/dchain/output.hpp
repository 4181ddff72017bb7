#pragma once
// Deterministic run artifacts. Every floating-point value is printed with
// snprintf("%.16e") -- 17 significant digits, enough to round-trip a double
// bit-exactly -- so repeated runs of the same build produce byte-identical
// files. Each file is SHA-1-hashed as it is written and the digests land in
// the run metadata, giving a cheap integrity / regression fingerprint.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dchain {

// ---- formatting ----

inline std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return std::string(buf);
}

// ---- SHA-1 (streaming) ----

namespace detail {

class Sha1 {
 public:
  void update(const char* data, size_t len) {
    total_bits_ += static_cast<uint64_t>(len) * 8;
    while (len > 0) {
      const size_t take = std::min(len, size_t(64) - fill_);
      std::memcpy(block_ + fill_, data, take);
      fill_ += take;
      data += take;
      len -= take;
      if (fill_ == 64) {
        process();
        fill_ = 0;
      }
    }
  }

  std::string hex_digest() {
    const uint64_t bits = total_bits_;
    const char pad = static_cast<char>(0x80);
    update(&pad, 1);
    const char zero = 0;
    while (fill_ != 56) update(&zero, 1);
    char len_be[8];
    for (int i = 0; i < 8; ++i) len_be[i] = static_cast<char>(bits >> (56 - 8 * i));
    update(len_be, 8);
    char out[41];
    for (int i = 0; i < 5; ++i) std::snprintf(out + 8 * i, 9, "%08x", h_[i]);
    return std::string(out, 40);
  }

 private:
  static uint32_t rol(uint32_t x, int s) { return (x << s) | (x >> (32 - s)); }

  void process() {
    uint32_t w[80];
    for (int i = 0; i < 16; ++i)
      w[i] = (uint32_t(uint8_t(block_[4 * i])) << 24) |
             (uint32_t(uint8_t(block_[4 * i + 1])) << 16) |
             (uint32_t(uint8_t(block_[4 * i + 2])) << 8) | uint32_t(uint8_t(block_[4 * i + 3]));
    for (int i = 16; i < 80; ++i) w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
    uint32_t a = h_[0], b = h_[1], c = h_[2], d = h_[3], e = h_[4];
    for (int i = 0; i < 80; ++i) {
      uint32_t f, k;
      if (i < 20) {
        f = (b & c) | (~b & d);
        k = 0x5A827999u;
      } else if (i < 40) {
        f = b ^ c ^ d;
        k = 0x6ED9EBA1u;
      } else if (i < 60) {
        f = (b & c) | (b & d) | (c & d);
        k = 0x8F1BBCDCu;
      } else {
        f = b ^ c ^ d;
        k = 0xCA62C1D6u;
      }
      const uint32_t t = rol(a, 5) + f + e + k + w[i];
      e = d;
      d = c;
      c = rol(b, 30);
      b = a;
      a = t;
    }
    h_[0] += a;
    h_[1] += b;
    h_[2] += c;
    h_[3] += d;
    h_[4] += e;
  }

  uint32_t h_[5] = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u, 0xC3D2E1F0u};
  char block_[64] = {};
  size_t fill_ = 0;
  uint64_t total_bits_ = 0;
};

}  // namespace detail

inline std::string sha1_hex(const std::string& data) {
  detail::Sha1 s;
  s.update(data.data(), data.size());
  return s.hex_digest();
}

// ---- hashed output file ----

// Text file that also accumulates the SHA-1 of everything written to it.
class HashedFile {
 public:
  explicit HashedFile(const std::string& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
  }

  void write(const std::string& s) {
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
    sha_.update(s.data(), s.size());
  }

  // Flushes, closes, and returns the digest of the file contents.
  std::string close() {
    out_.close();
    if (!out_) throw std::runtime_error("failed writing output file: " + path_);
    return sha_.hex_digest();
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  detail::Sha1 sha_;
};

// ---- CSV helpers ----

inline std::string csv_header(const std::string& first, const std::string& stem, int count) {
  std::string h = first;
  for (int i = 0; i < count; ++i) h += "," + stem + std::to_string(i);
  return h + "\n";
}

inline std::string csv_row(double t, const std::vector<double>& values) {
  std::string row = sci(t);
  for (double v : values) row += "," + sci(v);
  return row + "\n";
}

// Minimal reader for the files this library writes: one header line, then
// purely numeric comma-separated rows.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return static_cast<int>(i);
    return -1;
  }

  std::vector<double> column(const std::string& name) const {
    const int idx = column_index(name);
    if (idx < 0) throw std::runtime_error("csv: no column named '" + name + "'");
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[static_cast<size_t>(idx)]);
    return out;
  }
};

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv file: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) table.columns.push_back(cell);
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(table.columns.size());
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str())
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": non-numeric cell '" +
                                 cell + "'");
      row.push_back(v);
    }
    if (row.size() != table.columns.size())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(table.columns.size()) + " cells, got " +
                               std::to_string(row.size()));
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace dchain
