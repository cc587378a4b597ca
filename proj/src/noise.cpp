#include "ria/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ria {

namespace {

void check_probabilities(double p1, double p2) {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0) || p1 + p2 > 1.0) {
    throw std::invalid_argument("impulse probabilities must satisfy 0 <= p1, p2 and p1 + p2 <= 1 (got p1=" +
                                std::to_string(p1) + ", p2=" + std::to_string(p2) + ")");
  }
}

void check_sigma(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be finite and >= 0 (got " + std::to_string(sigma) + ")");
  }
}

}  // namespace

void NoiseParams::validate() const {
  check_sigma(sigma);
  check_probabilities(p1, p2);
}

Image add_awgn(const Image& img, double sigma, Rng& rng) {
  check_sigma(sigma);
  Image out = img;
  if (sigma == 0.0) return out;
  for (double& v : out.pixels()) v += sigma * rng.gaussian();
  return out;
}

Image add_sapn(const Image& img, double p1, double p2, Rng& rng, std::size_t* replaced) {
  check_probabilities(p1, p2);
  Image out = img;
  std::size_t count = 0;
  // One uniform draw per pixel regardless of outcome keeps streams aligned across images.
  for (double& v : out.pixels()) {
    const double u = rng.uniform();
    if (u < p1) {
      v = kMaxIntensity;
      ++count;
    } else if (u < p1 + p2) {
      v = 0.0;
      ++count;
    }
  }
  if (replaced) *replaced = count;
  return out;
}

Image corrupt_mixed(const Image& img, const NoiseParams& params, std::size_t* replaced) {
  params.validate();
  const Rng root(params.seed);
  Rng gauss = root.derive("awgn");
  Rng impulse = root.derive("sapn");
  return quantize(add_sapn(add_awgn(img, params.sigma, gauss), params.p1, params.p2, impulse, replaced));
}

}  // namespace ria
