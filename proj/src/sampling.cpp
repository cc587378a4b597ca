#include "ria/sampling.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ria {

IndexMask::IndexMask(std::size_t rows, std::size_t cols, bool fill)
    : rows_(rows), cols_(cols), ones_(fill ? rows * cols : 0), bits_(rows * cols, fill ? 1 : 0) {}

void IndexMask::set_flat(std::size_t flat, bool v) {
  const bool old = bits_[flat] != 0;
  if (old == v) return;
  bits_[flat] = v ? 1 : 0;
  if (v) {
    ++ones_;
  } else {
    --ones_;
  }
}

IndexMask IndexMask::complement() const {
  IndexMask out(rows_, cols_, false);
  for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] = bits_[k] ? 0 : 1;
  out.ones_ = bits_.size() - ones_;
  return out;
}

std::optional<std::size_t> IndexMask::first_empty_row() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < cols_ && !any; ++j) any = (*this)(i, j);
    if (!any) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> IndexMask::first_empty_col() const {
  std::vector<std::uint8_t> seen(cols_, 0);
  for (std::size_t k = 0; k < bits_.size(); ++k) seen[k % cols_] |= bits_[k];
  for (std::size_t j = 0; j < cols_; ++j) {
    if (!seen[j]) return j;
  }
  return std::nullopt;
}

std::size_t overlap_count(const IndexMask& a, const IndexMask& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("overlap_count: dimension mismatch");
  std::size_t n = 0;
  for (std::size_t k = 0; k < a.rows() * a.cols(); ++k) n += (a.at(k) && b.at(k)) ? 1 : 0;
  return n;
}

namespace {

// Uniform random permutation of [0, n) by Fisher-Yates.
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace

std::pair<IndexMask, IndexMask> gen_nonoverlap_pair(Dims dims, Rng& rng) {
  const std::size_t total = dims.rows * dims.cols;
  IndexMask first(dims.rows, dims.cols, true);
  const auto perm = random_permutation(total, rng);
  for (std::size_t k = 0; k < total / 2; ++k) first.set_flat(perm[k], false);
  auto second = first.complement();
  return {std::move(first), std::move(second)};
}

std::pair<IndexMask, IndexMask> gen_overlap_pair(Dims dims, double eta, Rng& rng) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("gen_overlap_pair: eta must lie in [0, 1] (got " +
                                std::to_string(eta) + ")");
  }
  const std::size_t total = dims.rows * dims.cols;
  const auto shared = static_cast<std::size_t>(std::lround(eta * static_cast<double>(total)));
  const std::size_t rest = total - shared;
  const std::size_t second_part = rest - rest / 2;  // the larger half when rest is odd

  const auto perm = random_permutation(total, rng);
  IndexMask a(dims.rows, dims.cols, false);
  IndexMask b(dims.rows, dims.cols, false);
  for (std::size_t k = 0; k < total; ++k) {
    const std::size_t p = perm[k];
    if (k < shared) {
      a.set_flat(p, true);
      b.set_flat(p, true);
    } else if (k < shared + second_part) {
      a.set_flat(p, true);
    } else {
      b.set_flat(p, true);
    }
  }
  return {std::move(a), std::move(b)};
}

MaskedImage apply_mask(const Image& img, const IndexMask& mask) {
  if (img.dims() != mask.dims()) {
    throw std::invalid_argument("apply_mask: image " + std::to_string(img.rows()) + "x" +
                                std::to_string(img.cols()) + " vs mask " +
                                std::to_string(mask.rows()) + "x" + std::to_string(mask.cols()));
  }
  Image out(img.rows(), img.cols());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = mask.at(k) ? src[k] : 0.0;
  return {std::move(out), mask};
}

}  // namespace ria
