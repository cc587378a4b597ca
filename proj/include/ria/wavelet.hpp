#pragma once

#include <span>
#include <vector>

#include "ria/image.hpp"

namespace ria {

/// One-level 2-D Haar decomposition. Each band is (rows/2) x (cols/2).
///   LL: approximation, LH: row differences, HL: column differences, HH: diagonal.
struct SubbandSet {
  Image ll;
  Image lh;
  Image hl;
  Image hh;

  Dims band_dims() const { return ll.dims(); }
};

/// Orthonormal Haar analysis on 2x2 blocks [[a, b], [c, d]]:
///   LL = (a+b+c+d)/2, LH = (a+b-c-d)/2, HL = (a-b+c-d)/2, HH = (a-b-c+d)/2.
/// Throws std::invalid_argument on odd dims.
SubbandSet dwt_haar(const Image& img);

/// Exact inverse of dwt_haar.
Image idwt_haar(const SubbandSet& bands);

/// Zeros coefficients with |c| < tau; |c| == tau is kept.
Image hard_threshold(const Image& band, double tau);

/// Fuses k decompositions: LL is the mean, each detail coefficient is the input of largest
/// magnitude (lowest index on ties), or 0 if that magnitude is below tau.
SubbandSet fuse(std::span<const SubbandSet> sets, double tau);

}  // namespace ria
