#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace ria {

/// Row/column extent of an image or mask.
struct Dims {
  std::size_t rows = 0;
  std::size_t cols = 0;

  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Dense grayscale image, row-major, real-valued intensities nominally in [0, 255].
class Image {
 public:
  Image() = default;
  Image(std::size_t rows, std::size_t cols, double fill = 0.0);
  Image(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Image from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  Dims dims() const { return {rows_, cols_}; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> pixels() { return data_; }
  std::span<const double> pixels() const { return data_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline constexpr double kMaxIntensity = 255.0;

/// Dynamic-range quantizer: clamps every pixel to [0, 255].
Image quantize(const Image& img);

/// Replicates the last row and/or column once so both dims are even.
/// Returns the extended image and the original dims.
std::pair<Image, Dims> extend_to_even(const Image& img);

/// Top-left sub-image of the given dims. Throws std::invalid_argument if dims exceed the image.
Image crop(const Image& img, Dims dims);

}  // namespace ria
