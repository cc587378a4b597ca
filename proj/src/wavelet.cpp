#include "ria/wavelet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ria {

SubbandSet dwt_haar(const Image& img) {
  if (img.rows() % 2 != 0 || img.cols() % 2 != 0 || img.empty()) {
    throw std::invalid_argument("dwt_haar: dims must be even and non-zero (got " +
                                std::to_string(img.rows()) + "x" + std::to_string(img.cols()) +
                                ")");
  }
  const std::size_t h = img.rows() / 2;
  const std::size_t w = img.cols() / 2;
  SubbandSet out{Image(h, w), Image(h, w), Image(h, w), Image(h, w)};
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      const double a = img(2 * i, 2 * j);
      const double b = img(2 * i, 2 * j + 1);
      const double c = img(2 * i + 1, 2 * j);
      const double d = img(2 * i + 1, 2 * j + 1);
      out.ll(i, j) = 0.5 * (a + b + c + d);
      out.lh(i, j) = 0.5 * (a + b - c - d);
      out.hl(i, j) = 0.5 * (a - b + c - d);
      out.hh(i, j) = 0.5 * (a - b - c + d);
    }
  }
  return out;
}

Image idwt_haar(const SubbandSet& bands) {
  const Dims d = bands.band_dims();
  if (bands.lh.dims() != d || bands.hl.dims() != d || bands.hh.dims() != d) {
    throw std::invalid_argument("idwt_haar: subband dims differ");
  }
  Image out(2 * d.rows, 2 * d.cols);
  for (std::size_t i = 0; i < d.rows; ++i) {
    for (std::size_t j = 0; j < d.cols; ++j) {
      const double ll = bands.ll(i, j);
      const double lh = bands.lh(i, j);
      const double hl = bands.hl(i, j);
      const double hh = bands.hh(i, j);
      out(2 * i, 2 * j) = 0.5 * (ll + lh + hl + hh);
      out(2 * i, 2 * j + 1) = 0.5 * (ll + lh - hl - hh);
      out(2 * i + 1, 2 * j) = 0.5 * (ll - lh + hl - hh);
      out(2 * i + 1, 2 * j + 1) = 0.5 * (ll - lh - hl + hh);
    }
  }
  return out;
}

Image hard_threshold(const Image& band, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("hard_threshold: tau must be >= 0");
  Image out = band;
  for (double& v : out.pixels()) {
    if (std::abs(v) < tau) v = 0.0;
  }
  return out;
}

namespace {

Image select_max_magnitude(std::span<const SubbandSet> sets, Image SubbandSet::*band, double tau) {
  const Image& first = sets.front().*band;
  Image out(first.rows(), first.cols());
  auto dst = out.pixels();
  for (std::size_t k = 0; k < dst.size(); ++k) {
    double best = (sets.front().*band).pixels()[k];
    for (std::size_t l = 1; l < sets.size(); ++l) {
      const double c = (sets[l].*band).pixels()[k];
      if (std::abs(c) > std::abs(best)) best = c;
    }
    dst[k] = std::abs(best) < tau ? 0.0 : best;
  }
  return out;
}

}  // namespace

SubbandSet fuse(std::span<const SubbandSet> sets, double tau) {
  if (sets.empty()) throw std::invalid_argument("fuse: no subband sets");
  if (!(tau >= 0.0)) throw std::invalid_argument("fuse: tau must be >= 0");
  const Dims d = sets.front().band_dims();
  for (const auto& s : sets) {
    if (s.ll.dims() != d || s.lh.dims() != d || s.hl.dims() != d || s.hh.dims() != d) {
      throw std::invalid_argument("fuse: subband dims differ");
    }
  }

  SubbandSet out;
  out.ll = Image(d.rows, d.cols);
  auto ll = out.ll.pixels();
  const double k = static_cast<double>(sets.size());
  for (std::size_t p = 0; p < ll.size(); ++p) {
    double sum = 0.0;
    for (const auto& s : sets) sum += s.ll.pixels()[p];
    ll[p] = sum / k;
  }
  out.lh = select_max_magnitude(sets, &SubbandSet::lh, tau);
  out.hl = select_max_magnitude(sets, &SubbandSet::hl, tau);
  out.hh = select_max_magnitude(sets, &SubbandSet::hh, tau);
  return out;
}

}  // namespace ria
