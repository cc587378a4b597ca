#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ria/lrmf.hpp"
#include "ria/rng.hpp"

namespace ria {

namespace {

constexpr std::size_t kPowerIterationCap = 5000;
constexpr double kRayleighTolerance = 1e-12;

// Gram matrix of the image on its smaller side.
Matrix gram(const Image& img) {
  const auto m = static_cast<Eigen::Index>(img.rows());
  const auto n = static_cast<Eigen::Index>(img.cols());
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(
      img.pixels().data(), m, n);
  if (m >= n) return x.transpose() * x;
  return x * x.transpose();
}

void project_out(Vector& v, const std::vector<Vector>& basis) {
  for (const auto& q : basis) v -= q.dot(v) * q;
}

}  // namespace

std::vector<double> top_singular_values(const Image& img, std::size_t count) {
  const std::size_t limit = std::min(img.rows(), img.cols());
  if (count == 0 || count > limit) {
    throw std::invalid_argument("top_singular_values: count " + std::to_string(count) +
                                " must lie in [1, " + std::to_string(limit) + "]");
  }
  const Matrix g = gram(img);
  const auto dim = g.rows();
  const double scale = g.diagonal().sum();  // trace bounds the largest eigenvalue

  std::vector<double> values;
  std::vector<Vector> found;
  Rng rng(0x5EEDF00DULL);

  for (std::size_t k = 0; k < count; ++k) {
    Vector x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) x(i) = rng.gaussian();
    project_out(x, found);
    double norm = x.norm();
    if (norm == 0.0 || scale == 0.0) {
      values.push_back(0.0);
      continue;
    }
    x /= norm;

    double lambda = 0.0;
    for (std::size_t it = 0; it < kPowerIterationCap; ++it) {
      Vector y = g * x;
      project_out(y, found);
      const double next = x.dot(y);
      norm = y.norm();
      // Remaining spectrum is numerically null.
      if (norm <= 1e-15 * scale) {
        lambda = 0.0;
        break;
      }
      x = y / norm;
      project_out(x, found);
      x.normalize();
      const bool settled = it > 0 && std::abs(next - lambda) < kRayleighTolerance * std::abs(next);
      lambda = next;
      if (settled) break;
    }
    found.push_back(x);
    values.push_back(std::sqrt(std::max(lambda, 0.0)));
  }
  return values;
}

}  // namespace ria
