#include "ria/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <system_error>

namespace ria {

PgmParseError::PgmParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }
  std::uint8_t peek() const { return bytes_[pos_]; }
  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }
  void advance(std::size_t n) { pos_ += n; }

  // Skips whitespace and '#' comments (which run to end of line).
  void skip_separators() {
    while (!at_end()) {
      if (is_space(peek())) {
        ++pos_;
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n' && peek() != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::optional<unsigned long> read_uint() {
    if (at_end() || peek() < '0' || peek() > '9') return std::nullopt;
    unsigned long v = 0;
    while (!at_end() && peek() >= '0' && peek() <= '9') {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000'000UL) return std::nullopt;
      ++pos_;
    }
    return v;
  }

  unsigned long header_field(const char* name) {
    skip_separators();
    const std::size_t at = pos_;
    auto v = read_uint();
    if (!v) throw PgmParseError(std::string("malformed header: expected ") + name, at);
    if (!at_end() && !is_space(peek()) && peek() != '#') {
      throw PgmParseError(std::string("malformed header: bad ") + name, pos_);
    }
    return *v;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image load_pgm(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw PgmParseError("malformed header: not a P2/P5 PGM", 0);
  }
  const bool binary = bytes[1] == '5';
  in.advance(2);
  if (in.at_end() || (!is_space(in.peek()) && in.peek() != '#')) {
    throw PgmParseError("malformed header: missing separator after magic", in.pos());
  }

  const auto cols = in.header_field("width");
  const auto rows = in.header_field("height");
  const std::size_t maxval_at = in.pos();
  const auto maxval = in.header_field("maxval");
  if (cols == 0 || rows == 0) throw PgmParseError("malformed header: zero dimension", maxval_at);
  if (maxval == 0 || maxval > 255) {
    throw PgmParseError("unsupported maxval " + std::to_string(maxval) + " (must be 1..255)",
                        maxval_at);
  }

  const std::size_t count = rows * cols;
  std::vector<double> data;
  data.reserve(count);

  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (in.at_end()) throw PgmParseError("unexpected end of pixel data", in.pos());
    in.advance(1);
    auto raster = in.rest();
    if (raster.size() < count) {
      throw PgmParseError("unexpected end of pixel data", in.pos() + raster.size());
    }
    for (std::size_t k = 0; k < count; ++k) {
      if (raster[k] > maxval) {
        throw PgmParseError("sample exceeds maxval", in.pos() + k);
      }
      data.push_back(raster[k]);
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      in.skip_separators();
      if (in.at_end()) throw PgmParseError("unexpected end of pixel data", in.pos());
      const std::size_t at = in.pos();
      auto v = in.read_uint();
      if (!v) throw PgmParseError("malformed sample", at);
      if (*v > maxval) throw PgmParseError("sample exceeds maxval", at);
      data.push_back(static_cast<double>(*v));
    }
  }
  return Image(rows, cols, std::move(data));
}

std::vector<std::uint8_t> save_pgm(const Image& img) {
  const std::string header =
      "P5\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + img.size());
  for (double v : img.pixels()) {
    // std::round rounds half away from zero.
    out.push_back(static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, kMaxIntensity)));
  }
  return out;
}

Image read_pgm_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  try {
    return load_pgm(bytes);
  } catch (const PgmParseError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_pgm_file(const std::filesystem::path& path, const Image& img) {
  const auto bytes = save_pgm(img);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ria
