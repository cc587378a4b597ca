#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ria/image.hpp"

namespace ria {

/// Raised on malformed netpbm input; carries the byte offset where parsing stopped.
class PgmParseError : public std::runtime_error {
 public:
  PgmParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses a binary (P5) or ASCII (P2) PGM with maxval <= 255. '#' comments are skipped.
Image load_pgm(std::span<const std::uint8_t> bytes);

/// Encodes as binary P5, maxval 255. Pixels are rounded half away from zero, then clamped.
std::vector<std::uint8_t> save_pgm(const Image& img);

Image read_pgm_file(const std::filesystem::path& path);

/// Writes via a temporary sibling file and rename, so a failed write leaves no partial output.
void write_pgm_file(const std::filesystem::path& path, const Image& img);

}  // namespace ria
