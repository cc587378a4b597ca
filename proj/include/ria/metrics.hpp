#pragma once

#include <limits>

#include "ria/image.hpp"

namespace ria {

inline constexpr double kPsnrPeak = 255.0;
inline constexpr std::size_t kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;

struct QualityReport {
  double mse = 0.0;
  double psnr_db = std::numeric_limits<double>::infinity();  ///< +inf when mse == 0
  double ssim = 1.0;
};

double mse(const Image& x, const Image& y);

/// 10 log10(255^2 / mse); +infinity for identical images.
double psnr(const Image& x, const Image& y);
double psnr_from_mse(double mse);

/// Mean SSIM over all valid 11x11 windows, Gaussian weights (sigma 1.5),
/// C1 = (0.01*255)^2, C2 = (0.03*255)^2. Requires both dims >= 11.
double ssim(const Image& x, const Image& y);

QualityReport evaluate(const Image& reference, const Image& test);

}  // namespace ria
