#pragma once

// Test-only utilities and independent oracles. Nothing here calls the code under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ria/image.hpp"

namespace ria::test {

inline Image random_image(std::size_t rows, std::size_t cols, std::uint64_t seed,
                          double lo = 0.0, double hi = 255.0) {
  std::mt19937_64 gen(seed);
  std::vector<double> data(rows * cols);
  for (double& v : data) {
    v = lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
  }
  return Image(rows, cols, std::move(data));
}

inline double max_abs_diff(const Image& a, const Image& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    m = std::max(m, std::abs(a.pixels()[k] - b.pixels()[k]));
  }
  return m;
}

/// Dense row-major square matrix for the oracles below.
struct Square {
  std::size_t n;
  std::vector<double> v;
  double& operator()(std::size_t i, std::size_t j) { return v[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v[i * n + j]; }
};

/// Eigenvalues (descending) and eigenvectors (columns of `vectors`) of a symmetric matrix
/// by the cyclic Jacobi rotation method.
struct JacobiResult {
  std::vector<double> values;
  Square vectors;
};

inline JacobiResult jacobi_eigen(Square a) {
  const std::size_t n = a.n;
  Square q{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) q(i, i) = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-300) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        if (a(p, r) == 0.0) continue;
        const double theta = (a(r, r) - a(p, p)) / (2.0 * a(p, r));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double qkp = q(k, p), qkr = q(k, r);
          q(k, p) = c * qkp - s * qkr;
          q(k, r) = s * qkp + c * qkr;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) > a(y, y); });
  JacobiResult res{{}, {n, std::vector<double>(n * n)}};
  for (std::size_t c = 0; c < n; ++c) {
    res.values.push_back(a(order[c], order[c]));
    for (std::size_t k = 0; k < n; ++k) res.vectors(k, c) = q(k, order[c]);
  }
  return res;
}

/// Singular values (descending) of img from the Jacobi eigenvalues of its Gram matrix.
inline std::vector<double> jacobi_singular_values(const Image& img) {
  const std::size_t m = img.rows(), n = img.cols();
  Square g{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k) g(i, j) += img(k, i) * img(k, j);
  auto eig = jacobi_eigen(g);
  std::vector<double> s;
  for (double l : eig.values) s.push_back(std::sqrt(std::max(l, 0.0)));
  return s;
}

/// Minimum-norm least squares through the Jacobi eigendecomposition of the Gram matrix:
/// x = V diag(1/l) V^T D^T t over eigenvalues above a relative cutoff.
inline std::vector<double> pinv_solve(const std::vector<std::vector<double>>& design,
                                      const std::vector<double>& target) {
  const std::size_t r = design.empty() ? 0 : design.front().size();
  Square g{r, std::vector<double>(r * r, 0.0)};
  std::vector<double> rhs(r, 0.0);
  for (std::size_t k = 0; k < design.size(); ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      rhs[i] += design[k][i] * target[k];
      for (std::size_t j = 0; j < r; ++j) g(i, j) += design[k][i] * design[k][j];
    }
  }
  auto eig = jacobi_eigen(g);
  const double top = eig.values.empty() ? 0.0 : eig.values.front();
  std::vector<double> x(r, 0.0);
  for (std::size_t c = 0; c < r; ++c) {
    if (eig.values[c] <= 1e-12 * top || eig.values[c] <= 0.0) continue;
    double proj = 0.0;
    for (std::size_t k = 0; k < r; ++k) proj += eig.vectors(k, c) * rhs[k];
    for (std::size_t k = 0; k < r; ++k) x[k] += eig.vectors(k, c) * proj / eig.values[c];
  }
  return x;
}

/// SSIM by direct 2-D windowed sums (no separable filtering, no shared code paths).
inline double direct_ssim(const Image& x, const Image& y) {
  constexpr int w = 11;
  constexpr double sd = 1.5;
  double kern[w][w];
  double total = 0.0;
  for (int a = 0; a < w; ++a)
    for (int b = 0; b < w; ++b) {
      kern[a][b] = std::exp(-((a - 5) * (a - 5) + (b - 5) * (b - 5)) / (2 * sd * sd));
      total += kern[a][b];
    }
  const double c1 = std::pow(0.01 * 255, 2), c2 = std::pow(0.03 * 255, 2);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + w <= x.rows(); ++i) {
    for (std::size_t j = 0; j + w <= x.cols(); ++j) {
      double mx = 0, my = 0;
      for (int a = 0; a < w; ++a)
        for (int b = 0; b < w; ++b) {
          const double k = kern[a][b] / total;
          mx += k * x(i + a, j + b);
          my += k * y(i + a, j + b);
        }
      double vx = 0, vy = 0, cxy = 0;
      for (int a = 0; a < w; ++a)
        for (int b = 0; b < w; ++b) {
          const double k = kern[a][b] / total;
          const double dx = x(i + a, j + b) - mx, dy = y(i + a, j + b) - my;
          vx += k * dx * dx;
          vy += k * dy * dy;
          cxy += k * dx * dy;
        }
      sum += ((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

}  // namespace ria::test
