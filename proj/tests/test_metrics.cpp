#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "ria/metrics.hpp"

using namespace ria;

namespace {

Image offset(const Image& x, double d) {
  Image y = x;
  for (double& v : y.pixels()) v += d;
  return y;
}

}  // namespace

TEST_CASE("mse examples") {
  const Image x = test::random_image(6, 7, 1);
  CHECK(mse(x, x) == 0.0);
  CHECK(mse(x, offset(x, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mse(Image::from_rows({{0, 0}}), Image::from_rows({{3, 4}})) == 12.5);
  CHECK_THROWS_AS(mse(Image(2, 2), Image(2, 3)), std::invalid_argument);
}

TEST_CASE("psnr examples") {
  CHECK(std::round(psnr_from_mse(1.0) * 1e4) / 1e4 == 48.1308);
  CHECK(psnr_from_mse(255.0 * 255.0) == doctest::Approx(0.0));
  const Image x = test::random_image(4, 4, 2);
  CHECK(std::isinf(psnr(x, x)));
  CHECK(psnr(x, x) > 0.0);
  CHECK(psnr(x, offset(x, 1.0)) == doctest::Approx(48.1308).epsilon(1e-6));
  CHECK_THROWS_AS(psnr(Image(2, 2), Image(3, 2)), std::invalid_argument);
}

TEST_CASE("psnr strictly decreases as mse grows") {
  const Image x = test::random_image(8, 8, 3);
  double prev = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= 50; ++d) {
    const double p = psnr(x, offset(x, d));
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("evaluate is self-consistent") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Image x = test::random_image(20, 24, seed);
    const Image y = test::random_image(20, 24, seed + 40);
    const QualityReport r = evaluate(x, y);
    CHECK(std::abs(psnr_from_mse(r.mse) - r.psnr_db) <= 1e-9);
    CHECK(r.ssim >= -1.0);
    CHECK(r.ssim <= 1.0);
  }
  const Image x = test::random_image(16, 16, 1);
  const QualityReport same = evaluate(x, x);
  CHECK(same.mse == 0.0);
  CHECK(std::isinf(same.psnr_db));
  CHECK(same.ssim == 1.0);
}

TEST_CASE("ssim examples") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Image x = test::random_image(32, 40, seed);
    CHECK(ssim(x, x) == 1.0);
    Image inv = x;
    for (double& v : inv.pixels()) v = 255.0 - v;
    CHECK(ssim(x, inv) < 0.5);
    CHECK(ssim(x, inv) == doctest::Approx(test::direct_ssim(x, inv)).epsilon(1e-10));
    const Image y = test::random_image(32, 40, seed + 7);
    CHECK(ssim(x, y) == doctest::Approx(ssim(y, x)).epsilon(1e-14));
    CHECK(ssim(x, y) == doctest::Approx(test::direct_ssim(x, y)).epsilon(1e-10));
  }
  const Image smooth = [] {
    Image g(24, 24);
    for (std::size_t i = 0; i < 24; ++i)
      for (std::size_t j = 0; j < 24; ++j) g(i, j) = 4.0 * static_cast<double>(i + j);
    return g;
  }();
  const Image noisy = offset(smooth, 3.0);
  CHECK(ssim(smooth, noisy) == doctest::Approx(test::direct_ssim(smooth, noisy)).epsilon(1e-10));
}

TEST_CASE("ssim errors") {
  CHECK_THROWS_AS(ssim(Image(10, 20), Image(10, 20)), std::invalid_argument);
  CHECK_THROWS_AS(ssim(Image(20, 10), Image(20, 10)), std::invalid_argument);
  CHECK_THROWS_AS(ssim(Image(12, 12), Image(12, 13)), std::invalid_argument);
  CHECK_NOTHROW(ssim(Image(11, 11), Image(11, 11)));
}
