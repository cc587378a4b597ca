#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ria/sampling.hpp"

using namespace ria;

namespace {

bool disjoint_and_covering(const IndexMask& a, const IndexMask& b) {
  for (std::size_t k = 0; k < a.rows() * a.cols(); ++k) {
    if (a.at(k) == b.at(k)) return false;
  }
  return true;
}

std::size_t count_bits(const IndexMask& m) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < m.rows() * m.cols(); ++k) n += m.at(k) ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("IndexMask keeps its ones-count consistent") {
  IndexMask m(3, 3);
  m.set(0, 0, true);
  m.set(0, 0, true);
  m.set(2, 1, true);
  CHECK(m.ones() == 2);
  m.set(0, 0, false);
  CHECK(m.ones() == 1);
  CHECK(m.complement().ones() == 8);
  CHECK(m.first_empty_row() == std::size_t{0});
  CHECK(m.first_empty_col() == std::size_t{0});
}

TEST_CASE("gen_nonoverlap_pair") {
  SUBCASE("4x4 splits 8/8") {
    Rng rng(1);
    auto [a, b] = gen_nonoverlap_pair({4, 4}, rng);
    CHECK(a.ones() == 8);
    CHECK(b.ones() == 8);
    CHECK(disjoint_and_covering(a, b));
  }
  SUBCASE("odd pixel count keeps floor(MN/2) zeros") {
    Rng rng(2);
    auto [a, b] = gen_nonoverlap_pair({5, 7}, rng);
    CHECK(a.rows() * a.cols() - a.ones() == 17);
    CHECK(disjoint_and_covering(a, b));
    CHECK(count_bits(a) == a.ones());
  }
  SUBCASE("same seed gives same masks") {
    Rng r1(3), r2(3);
    CHECK(gen_nonoverlap_pair({6, 9}, r1) == gen_nonoverlap_pair({6, 9}, r2));
  }
}

TEST_CASE("gen_overlap_pair") {
  SUBCASE("eta 0.5 on 4x4: 12 ones each, overlap 8") {
    Rng rng(1);
    auto [a, b] = gen_overlap_pair({4, 4}, 0.5, rng);
    CHECK(a.ones() == 12);
    CHECK(b.ones() == 12);
    CHECK(overlap_count(a, b) == 8);
  }
  SUBCASE("eta 0 gives a disjoint halving") {
    Rng rng(2);
    auto [a, b] = gen_overlap_pair({4, 6}, 0.0, rng);
    CHECK(a.ones() == 12);
    CHECK(b.ones() == 12);
    CHECK(disjoint_and_covering(a, b));
  }
  SUBCASE("eta 1 gives all-ones twice") {
    Rng rng(3);
    auto [a, b] = gen_overlap_pair({5, 5}, 1.0, rng);
    CHECK(a.ones() == 25);
    CHECK(b.ones() == 25);
  }
  SUBCASE("odd remainder goes to the first mask") {
    Rng rng(4);
    auto [a, b] = gen_overlap_pair({3, 3}, 0.0, rng);  // 9 pixels: 5 + 4
    CHECK(a.ones() == 5);
    CHECK(b.ones() == 4);
  }
  SUBCASE("eta outside [0, 1] is rejected") {
    Rng rng(5);
    CHECK_THROWS_AS(gen_overlap_pair({4, 4}, 1.2, rng), std::invalid_argument);
    CHECK_THROWS_AS(gen_overlap_pair({4, 4}, -0.1, rng), std::invalid_argument);
  }
}

TEST_CASE("mask invariants hold for many seeds") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Dims d{7 + seed % 5, 6 + seed % 3};
    const std::size_t total = d.rows * d.cols;
    auto [a, b] = gen_nonoverlap_pair(d, rng);
    REQUIRE(disjoint_and_covering(a, b));
    const double eta = static_cast<double>(seed % 11) / 10.0;
    auto [c, e] = gen_overlap_pair(d, eta, rng);
    REQUIRE(overlap_count(c, e) == static_cast<std::size_t>(std::lround(eta * total)));
    for (std::size_t k = 0; k < total; ++k) REQUIRE((c.at(k) || e.at(k)));
  }
}

TEST_CASE("non-overlap zeros are placed uniformly") {
  // Frequency of each pixel being observed by the first mask over 1000 seeds.
  const Dims d{16, 16};
  std::vector<int> hits(d.rows * d.cols, 0);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    auto [a, b] = gen_nonoverlap_pair(d, rng);
    for (std::size_t k = 0; k < hits.size(); ++k) hits[k] += a.at(k) ? 1 : 0;
  }
  for (int h : hits) {
    const double p = h / 1000.0;
    CHECK(p > 0.45);
    CHECK(p < 0.55);
  }
}

TEST_CASE("apply_mask") {
  const Image flat(3, 3, 7.0);
  CHECK(apply_mask(flat, IndexMask::all_ones({3, 3})).image == flat);
  CHECK(apply_mask(flat, IndexMask(3, 3, false)).image == Image(3, 3, 0.0));

  IndexMask m(3, 3);
  m.set(0, 1, true);
  m.set(1, 1, true);
  m.set(2, 2, true);
  const auto sub = apply_mask(flat, m);
  double sum = 0.0;
  for (double v : sub.image.pixels()) sum += v;
  CHECK(sum == 21.0);
  CHECK(sub.mask == m);
  CHECK_THROWS_AS(apply_mask(flat, IndexMask(2, 3)), std::invalid_argument);
}
