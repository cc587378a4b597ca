#include "ria/metrics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ria {

namespace {

void require_same_dims(const Image& x, const Image& y, const char* who) {
  if (x.dims() != y.dims()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                                " vs " + std::to_string(y.rows()) + "x" +
                                std::to_string(y.cols()) + ")");
  }
}

// Pairwise summation; result is independent of how callers partition work.
double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

std::array<double, kSsimWindow> gaussian_kernel() {
  std::array<double, kSsimWindow> k{};
  const double c = static_cast<double>(kSsimWindow / 2);
  double total = 0.0;
  for (std::size_t i = 0; i < kSsimWindow; ++i) {
    const double d = static_cast<double>(i) - c;
    k[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    total += k[i];
  }
  for (double& v : k) v /= total;
  return k;
}

// Separable 'valid' filtering of the row-major field src (rows x cols).
std::vector<double> filter_valid(const std::vector<double>& src, std::size_t rows, std::size_t cols,
                                 const std::array<double, kSsimWindow>& k) {
  const std::size_t out_cols = cols - kSsimWindow + 1;
  const std::size_t out_rows = rows - kSsimWindow + 1;
  std::vector<double> horiz(rows * out_cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < out_cols; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < kSsimWindow; ++t) s += k[t] * src[i * cols + j + t];
      horiz[i * out_cols + j] = s;
    }
  }
  std::vector<double> out(out_rows * out_cols);
  for (std::size_t i = 0; i < out_rows; ++i) {
    for (std::size_t j = 0; j < out_cols; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < kSsimWindow; ++t) s += k[t] * horiz[(i + t) * out_cols + j];
      out[i * out_cols + j] = s;
    }
  }
  return out;
}

}  // namespace

double mse(const Image& x, const Image& y) {
  require_same_dims(x, y, "mse");
  if (x.empty()) throw std::invalid_argument("mse: empty image");
  std::vector<double> sq(x.size());
  auto a = x.pixels();
  auto b = y.pixels();
  for (std::size_t k = 0; k < sq.size(); ++k) {
    const double d = a[k] - b[k];
    sq[k] = d * d;
  }
  return pairwise_sum(sq.data(), sq.size()) / static_cast<double>(sq.size());
}

double psnr_from_mse(double m) {
  if (m < 0.0) throw std::invalid_argument("psnr: negative mse");
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPsnrPeak * kPsnrPeak / m);
}

double psnr(const Image& x, const Image& y) { return psnr_from_mse(mse(x, y)); }

double ssim(const Image& x, const Image& y) {
  require_same_dims(x, y, "ssim");
  if (x.rows() < kSsimWindow || x.cols() < kSsimWindow) {
    throw std::invalid_argument("ssim: image " + std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()) + " is smaller than the " +
                                std::to_string(kSsimWindow) + "x" +
                                std::to_string(kSsimWindow) + " window");
  }
  constexpr double c1 = (0.01 * kPsnrPeak) * (0.01 * kPsnrPeak);
  constexpr double c2 = (0.03 * kPsnrPeak) * (0.03 * kPsnrPeak);
  const auto kernel = gaussian_kernel();
  const std::size_t rows = x.rows();
  const std::size_t cols = x.cols();

  auto a = x.pixels();
  auto b = y.pixels();
  std::vector<double> xs(a.begin(), a.end());
  std::vector<double> ys(b.begin(), b.end());
  std::vector<double> xx(xs.size()), yy(xs.size()), xy(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    xx[k] = xs[k] * xs[k];
    yy[k] = ys[k] * ys[k];
    xy[k] = xs[k] * ys[k];
  }
  const auto mu_x = filter_valid(xs, rows, cols, kernel);
  const auto mu_y = filter_valid(ys, rows, cols, kernel);
  const auto e_xx = filter_valid(xx, rows, cols, kernel);
  const auto e_yy = filter_valid(yy, rows, cols, kernel);
  const auto e_xy = filter_valid(xy, rows, cols, kernel);

  std::vector<double> map(mu_x.size());
  for (std::size_t k = 0; k < map.size(); ++k) {
    const double mx = mu_x[k];
    const double my = mu_y[k];
    const double var_x = e_xx[k] - mx * mx;
    const double var_y = e_yy[k] - my * my;
    const double cov = e_xy[k] - mx * my;
    map[k] = ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
             ((mx * mx + my * my + c1) * (var_x + var_y + c2));
  }
  return pairwise_sum(map.data(), map.size()) / static_cast<double>(map.size());
}

QualityReport evaluate(const Image& reference, const Image& test) {
  QualityReport r;
  r.mse = mse(reference, test);
  r.psnr_db = psnr_from_mse(r.mse);
  r.ssim = ssim(reference, test);
  return r;
}

}  // namespace ria
