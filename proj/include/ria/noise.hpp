#pragma once

#include <cstddef>
#include <cstdint>

#include "ria/image.hpp"
#include "ria/rng.hpp"

namespace ria {

/// Mixed-noise parameters: AWGN std `sigma`, salt probability `p1`, pepper probability `p2`.
struct NoiseParams {
  double sigma = 20.0;
  double p1 = 0.15;
  double p2 = 0.15;
  std::uint64_t seed = 0;

  double rho() const { return p1 + p2; }
  void validate() const;

  /// Splits an impulse density evenly between salt and pepper.
  static NoiseParams from_rho(double sigma, double rho, std::uint64_t seed) {
    return {sigma, rho / 2.0, rho / 2.0, seed};
  }
};

/// Adds i.i.d. zero-mean Gaussian deviates; no clamping.
Image add_awgn(const Image& img, double sigma, Rng& rng);

/// Replaces each pixel by 255 with probability p1, by 0 with probability p2.
/// If `replaced` is non-null it receives the number of impulse pixels.
Image add_sapn(const Image& img, double p1, double p2, Rng& rng, std::size_t* replaced = nullptr);

/// quantize(add_sapn(add_awgn(img))), using independent sub-streams of params.seed.
Image corrupt_mixed(const Image& img, const NoiseParams& params, std::size_t* replaced = nullptr);

}  // namespace ria
