#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ria/image.hpp"
#include "ria/rng.hpp"

namespace ria {

/// Boolean sampling matrix; 1 marks an observed pixel.
class IndexMask {
 public:
  IndexMask() = default;
  IndexMask(std::size_t rows, std::size_t cols, bool fill = false);

  static IndexMask all_ones(Dims dims) { return IndexMask(dims.rows, dims.cols, true); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Dims dims() const { return {rows_, cols_}; }
  std::size_t ones() const { return ones_; }

  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j] != 0; }
  bool at(std::size_t flat) const { return bits_[flat] != 0; }
  void set(std::size_t i, std::size_t j, bool v) { set_flat(i * cols_ + j, v); }
  void set_flat(std::size_t flat, bool v);

  IndexMask complement() const;

  /// First row (or column) with no observed pixel, if any.
  std::optional<std::size_t> first_empty_row() const;
  std::optional<std::size_t> first_empty_col() const;

  friend bool operator==(const IndexMask&, const IndexMask&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t ones_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Sub-image: pixel values where the mask is 1 and exactly 0 elsewhere.
struct MaskedImage {
  Image image;
  IndexMask mask;
};

std::size_t overlap_count(const IndexMask& a, const IndexMask& b);

/// Complementary pair: the first mask has exactly floor(MN/2) zeros placed uniformly at random.
std::pair<IndexMask, IndexMask> gen_nonoverlap_pair(Dims dims, Rng& rng);

/// Overlapping pair built from a random partition of all pixels into three sets:
/// a shared set of round(eta*MN) pixels, and the remainder split as evenly as possible
/// (first set gets the extra pixel). Each mask is the shared set plus one of the two halves.
std::pair<IndexMask, IndexMask> gen_overlap_pair(Dims dims, double eta, Rng& rng);

MaskedImage apply_mask(const Image& img, const IndexMask& mask);

}  // namespace ria
