#include "ria/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ria {

Image::Image(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Image::Image(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("Image: data length " + std::to_string(data_.size()) +
                                " does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Image: non-finite pixel value");
  }
}

Image Image::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t nrows = rows.size();
  const std::size_t ncols = nrows ? rows.begin()->size() : 0;
  std::vector<double> data;
  data.reserve(nrows * ncols);
  for (const auto& r : rows) {
    if (r.size() != ncols) throw std::invalid_argument("Image::from_rows: ragged rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Image(nrows, ncols, std::move(data));
}

Image quantize(const Image& img) {
  Image out = img;
  for (double& v : out.pixels()) v = std::clamp(v, 0.0, kMaxIntensity);
  return out;
}

std::pair<Image, Dims> extend_to_even(const Image& img) {
  const Dims original = img.dims();
  const std::size_t rows = original.rows + (original.rows % 2);
  const std::size_t cols = original.cols + (original.cols % 2);
  if (rows == original.rows && cols == original.cols) return {img, original};

  Image out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t si = std::min(i, original.rows - 1);
    for (std::size_t j = 0; j < cols; ++j) {
      out(i, j) = img(si, std::min(j, original.cols - 1));
    }
  }
  return {std::move(out), original};
}

Image crop(const Image& img, Dims dims) {
  if (dims.rows > img.rows() || dims.cols > img.cols()) {
    throw std::invalid_argument("crop: requested " + std::to_string(dims.rows) + "x" +
                                std::to_string(dims.cols) + " exceeds image " +
                                std::to_string(img.rows()) + "x" + std::to_string(img.cols()));
  }
  if (dims == img.dims()) return img;
  Image out(dims.rows, dims.cols);
  for (std::size_t i = 0; i < dims.rows; ++i) {
    auto src = img.row(i).first(dims.cols);
    std::copy(src.begin(), src.end(), out.pixels().begin() + static_cast<std::ptrdiff_t>(i * dims.cols));
  }
  return out;
}

}  // namespace ria
