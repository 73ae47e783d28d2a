#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "specmosaic/demosaic.hpp"
#include "specmosaic/error.hpp"
#include "specmosaic/sfa.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

namespace specmosaic {
namespace {

using testing::random_mosaic;

TEST(WbBilinear, ConstantMosaic) {
  const auto c = wb_bilinear(MosaicImage(9, 10, 0.42), SfaPattern::row_major(3));
  ASSERT_EQ(c.bands(), 9u);
  for (double x : c.data()) EXPECT_EQ(x, 0.42);
}

TEST(WbBilinear, AffineFieldOnInterior) {
  // Band 0 of a period-2 row-major pattern sits on even rows and columns.
  const auto p = SfaPattern::row_major(2);
  MosaicImage m(20, 20, 0.0);
  for (std::size_t u = 0; u < 20; ++u)
    for (std::size_t v = 0; v < 20; ++v) m(u, v) = 0.001 * u + 0.002 * v;
  const auto c = wb_bilinear(m, p);
  // Interior of band 0: between the first (0) and last (18) lattice sites.
  for (std::size_t u = 0; u <= 18; ++u)
    for (std::size_t v = 0; v <= 18; ++v) EXPECT_NEAR(c(u, v, 0), 0.001 * u + 0.002 * v, 1e-6);
}

TEST(WbBilinear, PreservesLatticeSamples) {
  std::mt19937_64 rng(21);
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto p = SfaPattern::row_major(n);
    const auto m = random_mosaic(rng, 23, 19);
    const auto back = remosaic(wb_bilinear(m, p), p);
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(back.data()[i], m.data()[i], 1e-7);
  }
}

TEST(WbBilinear, StaysWithinInputRange) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = SfaPattern::row_major(2 + trial % 4);
    const auto m = random_mosaic(rng, 15, 16);
    const auto [lo, hi] = std::minmax_element(m.data().begin(), m.data().end());
    const auto rec = wb_bilinear(m, p);
    for (double x : rec.data()) {
      EXPECT_GE(x, *lo);
      EXPECT_LE(x, *hi);
    }
  }
}

TEST(WbBilinear, MatchesBruteForceOracle) {
  std::mt19937_64 rng(23);
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto p = SfaPattern::row_major(n);
    const auto m = random_mosaic(rng, 20, 20);
    const auto expect = oracle::bilinear(m, p);
    const auto got = wb_bilinear(m, p);
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got.data()[i], expect.data()[i], 1e-9);
  }
  const SfaPattern shuffled(2, {2, 0, 3, 1});
  const auto m = random_mosaic(rng, 20, 20);
  const auto expect = oracle::bilinear(m, shuffled);
  const auto got = wb_bilinear(m, shuffled);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got.data()[i], expect.data()[i], 1e-9);
}

TEST(WbBilinear, RejectsMosaicSmallerThanPeriod) {
  EXPECT_THROW(wb_bilinear(MosaicImage(3, 8), SfaPattern::row_major(4)), ShapeError);
}

}  // namespace
}  // namespace specmosaic
