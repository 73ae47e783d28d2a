#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "specmosaic/error.hpp"
#include "specmosaic/freqsel.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

namespace specmosaic {
namespace {

using testing::random_cube;
using testing::random_map;

double max_of(const RealMap& m) { return *std::max_element(m.data().begin(), m.data().end()); }

TEST(CenteredSpectrum, ConstantIsDcDelta) {
  const auto s = centered_spectrum(RealMap(4, 4, 1.0));
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = 0; v < 4; ++v) {
      const double expect = (u == 2 && v == 2) ? 16.0 : 0.0;
      EXPECT_NEAR(s(u, v).real(), expect, 1e-12);
      EXPECT_NEAR(s(u, v).imag(), 0.0, 1e-12);
    }
}

TEST(CenteredSpectrum, ZeroMap) {
  const auto s = centered_spectrum(RealMap(5, 3, 0.0));
  for (const auto& z : s.data()) EXPECT_EQ(std::abs(z), 0.0);
}

TEST(CenteredSpectrum, CosineGivesConjugatePair) {
  RealMap x(4, 4);
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = 0; v < 4; ++v) x(u, v) = std::cos(2 * std::numbers::pi * double(u) / 4);
  const auto s = centered_spectrum(x);
  const auto ref = oracle::centered_dft(x);
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = 0; v < 4; ++v) {
      const bool peak = v == 2 && (u == 1 || u == 3);
      EXPECT_NEAR(std::abs(s(u, v)), peak ? 8.0 : 0.0, 1e-12) << u << "," << v;
      EXPECT_NEAR(std::abs(s(u, v) - ref(u, v)), 0.0, 1e-12);
    }
  EXPECT_NEAR(std::abs(s(1, 2) - std::conj(s(3, 2))), 0.0, 1e-12);
}

TEST(CenteredSpectrum, MatchesBruteForceAllSmallSizes) {
  std::mt19937_64 rng(31);
  for (std::size_t h = 1; h <= 8; ++h) {
    for (std::size_t w = 1; w <= 8; ++w) {
      const auto x = random_map(rng, h, w, -1.0, 1.0);
      const auto s = centered_spectrum(x);
      const auto ref = oracle::centered_dft(x);
      double scale = 0;
      for (const auto& z : ref.data()) scale = std::max(scale, std::abs(z));
      for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_LE(std::abs(s.data()[i] - ref.data()[i]), 1e-9 * std::max(scale, 1.0)) << h << "x" << w;
      }
    }
  }
}

TEST(LogMagnitude, ClosedForms) {
  const auto zero = log_magnitude(ComplexMap(2, 2), 1e-8);
  for (double x : zero.data()) EXPECT_NEAR(x, std::log(1e-8), 1e-12);
  EXPECT_NEAR(std::log(1e-8), -18.420680743952367, 1e-12);
  ComplexMap one(1, 1, std::complex<double>(0.6, 0.8));
  EXPECT_NEAR(log_magnitude(one, 1e-8)(0, 0), 1e-8, 1e-15);
}

TEST(LogMagnitude, MatchesElementwiseOracle) {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> d(0, 10);
  ComplexMap s(6, 7);
  for (auto& z : s.data()) z = {d(rng), d(rng)};
  const auto m = log_magnitude(s, 1e-8);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto z = s.data()[i];
    EXPECT_NEAR(m.data()[i], std::log(std::sqrt(z.real() * z.real() + z.imag() * z.imag()) + 1e-8), 1e-12);
  }
}

TEST(GaussianBlur, PreservesConstants) {
  const auto b = gaussian_blur(RealMap(9, 13, 0.37), 1.5, 5);
  for (double x : b.data()) EXPECT_NEAR(x, 0.37, 1e-9);
}

TEST(GaussianBlur, ImpulseGivesCenterWeight) {
  RealMap m(21, 21, 0.0);
  m(10, 10) = 1.0;
  const auto taps = gaussian_kernel(1.5, 5);
  const auto w2 = oracle::gaussian_2d(1.5, 5);
  const auto out = gaussian_blur(m, 1.5, 5);
  EXPECT_NEAR(out(10, 10), taps[5] * taps[5], 1e-15);
  EXPECT_NEAR(out(10, 10), w2[5][5], 1e-12);
}

TEST(GaussianBlur, MatchesDenseConvolution) {
  std::mt19937_64 rng(33);
  for (auto [h, w] : {std::pair{16, 16}, std::pair{7, 23}, std::pair{3, 4}}) {
    const auto x = random_map(rng, h, w);
    const auto fast = gaussian_blur(x, 1.5, 5);
    const auto dense = oracle::dense_blur(x, 1.5, 5);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(fast.data()[i], dense.data()[i], 1e-9);
  }
}

TEST(GaussianBlur, RejectsBadParams) {
  EXPECT_THROW(gaussian_blur(RealMap(3, 3), 0.0, 5), ValidationError);
  EXPECT_THROW(gaussian_blur(RealMap(3, 3), 1.0, 0), ValidationError);
}

TEST(FreqParams, Validation) {
  FreqParams p;
  EXPECT_NO_THROW(p.validate());
  p.r_low = 0.8;
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.epsilon = 0;
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(FrequencyVariationMap, IdenticalInputsGiveZero) {
  std::mt19937_64 rng(34);
  const auto c = random_cube(rng, 32, 24, 3);
  const auto m = frequency_variation_map(c, c, {});
  for (double x : m.values.data()) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(m.dc_row, 16u);
  EXPECT_EQ(m.dc_col, 12u);
}

TEST(FrequencyVariationMap, BrightnessShiftIsRemovedByBandpass) {
  const auto c1 = testing::smooth_cube(128, 4, 1);
  const auto c2 = testing::add_offset(c1, 0.1);
  FreqParams p;
  p.r_low = 0.08;
  EXPECT_LT(max_of(frequency_variation_map(c1, c2, p).values), 1e-3);
}

TEST(FrequencyVariationMap, SinusoidPeaksAtItsFrequency_SmallOracle) {
  // 32x32: the brute-force DFT oracle locates the peak bins of the
  // contaminated band, which must coincide with the map maximum.
  const auto c1 = testing::smooth_cube(32, 2, 2);
  const auto c2 = testing::add_row_sinusoid(c1, 1, 0.2, 0.25);
  RealMap delta(32, 32);
  for (std::size_t u = 0; u < 32; ++u)
    for (std::size_t v = 0; v < 32; ++v) delta(u, v) = c2(u, v, 1) - c1(u, v, 1);
  const auto ref = oracle::centered_dft(delta);
  std::vector<std::size_t> peaks;
  double top = 0;
  for (const auto& z : ref.data()) top = std::max(top, std::abs(z));
  for (std::size_t i = 0; i < ref.size(); ++i)
    if (std::abs(ref.data()[i]) > 0.5 * top) peaks.push_back(i);
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_EQ(peaks[0], (16 - 8) * 32 + 16);  // normalized frequency -0.25 along rows
  EXPECT_EQ(peaks[1], (16 + 8) * 32 + 16);  // +0.25

  const auto m = frequency_variation_map(c1, c2, {});
  const double mx = max_of(m.values);
  EXPECT_NEAR(m.values.data()[peaks[0]], mx, 1e-9);
  EXPECT_NEAR(m.values.data()[peaks[1]], mx, 1e-9);
}

TEST(FrequencyVariationMap, SinusoidPeaksAtItsFrequency_128) {
  const auto c1 = testing::smooth_cube(128, 16, 3);
  const auto c2 = testing::add_row_sinusoid(c1, 5, 0.2, 0.25);
  const auto m = frequency_variation_map(c1, c2, {});
  const double mx = max_of(m.values);
  EXPECT_GT(mx, 1.0);
  EXPECT_NEAR(m.values(64 - 32, 64), mx, 1e-9);
  EXPECT_NEAR(m.values(64 + 32, 64), mx, 1e-9);
}

TEST(FrequencyVariationMap, ShapeMismatch) {
  EXPECT_THROW(frequency_variation_map(SpectralCube(8, 8, 2), SpectralCube(8, 8, 3), {}), ShapeError);
}

TEST(FrequencyVariationMap, Properties) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(8, 40);
    const std::size_t h = dim(rng), w = dim(rng);
    const auto c1 = random_cube(rng, h, w, 3), c2 = random_cube(rng, h, w, 3);
    FreqParams p;
    p.r_low = 0.1;
    p.r_high = 0.6;
    const auto a = frequency_variation_stages(c1, c2, p);
    const auto b = frequency_variation_map(c2, c1, p);
    EXPECT_EQ(a.map.values, b.values);  // symmetric, bit-exact

    const double r_max = std::min(h, w) / 2.0;
    for (std::size_t u = 0; u < h; ++u)
      for (std::size_t v = 0; v < w; ++v) {
        const double d = std::hypot(double(u) - double(h / 2), double(v) - double(w / 2));
        if (a.map.values(u, v) != 0.0) {
          EXPECT_GE(d, p.r_low * r_max);
          EXPECT_LE(d, p.r_high * r_max);
        }
        for (const auto& r : a.per_channel) EXPECT_GE(a.channel_max(u, v), r(u, v));
        EXPECT_GE(a.map.values(u, v), 0.0);
      }
  }
}

FrequencyVariationMap map_with_values(std::size_t h, std::size_t w, std::size_t above, double level) {
  FrequencyVariationMap m;
  m.values = RealMap(h, w, 0.0);
  for (std::size_t i = 0; i < above; ++i) m.values.data()[i] = level;
  return m;
}

TEST(ClassifyPatch, ZeroMap) {
  const auto v = classify_patch(map_with_values(16, 16, 0, 0), {0.5, 0});
  EXPECT_EQ(v.count, 0u);
  EXPECT_FALSE(v.is_hard);
}

TEST(ClassifyPatch, CountAndStrictThreshold) {
  const auto m = map_with_values(16, 16, 60, 2.0);
  auto v = classify_patch(m, {1.0, 50});
  EXPECT_EQ(v.count, 60u);
  EXPECT_TRUE(v.is_hard);
  v = classify_patch(m, {1.0, 60});
  EXPECT_EQ(v.count, 60u);
  EXPECT_FALSE(v.is_hard);
  // t_var is strict too: values equal to it do not count.
  EXPECT_EQ(classify_patch(m, {2.0, 0}).count, 0u);
}

std::vector<PatchPair> sinusoid_fixture(std::size_t n, std::size_t bands, std::size_t hot) {
  std::vector<PatchPair> pairs;
  for (std::size_t i = 0; i < 20; ++i) {
    const auto base = testing::smooth_cube(n, bands, 100 + static_cast<unsigned>(i));
    pairs.push_back({base, i == hot ? testing::add_row_sinusoid(base, 2, 0.2, 0.25) : base});
  }
  return pairs;
}

TEST(SelectHard, IdenticalPairsSelectNothing) {
  std::vector<PatchPair> pairs;
  for (unsigned i = 0; i < 20; ++i) {
    const auto c = testing::smooth_cube(32, 2, i);
    pairs.push_back({c, c});
  }
  const auto r = select_hard(pairs, {}, {});
  EXPECT_TRUE(r.hard_indices.empty());
  EXPECT_EQ(r.verdicts.size(), 20u);
}

TEST(SelectHard, FindsTheSinusoidPatch) {
  const auto pairs = sinusoid_fixture(128, 16, 13);
  const auto r = select_hard(pairs, {}, {});
  EXPECT_EQ(r.hard_indices, std::vector<std::size_t>{13});
  EXPECT_EQ(r.verdicts[13].count, 18u);
}

TEST(SelectHard, MalformedPairReportsIndex) {
  std::vector<PatchPair> pairs(3, PatchPair{SpectralCube(8, 8, 1), SpectralCube(8, 8, 1)});
  pairs[2].comparison = SpectralCube(8, 9, 1);
  try {
    select_hard(pairs, {}, {});
    FAIL() << "expected RecordError";
  } catch (const RecordError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(SelectHard, HardSetShrinksAsThresholdsRise) {
  std::mt19937_64 rng(36);
  std::vector<FrequencyVariationMap> maps;
  for (int i = 0; i < 30; ++i) {
    FrequencyVariationMap m;
    m.values = random_map(rng, 16, 16, 0.0, 3.0);
    maps.push_back(m);
  }
  auto hard_set = [&](SelectionParams p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < maps.size(); ++i)
      if (classify_patch(maps[i], p).is_hard) out.push_back(i);
    return out;
  };
  for (std::size_t t_cnt = 0; t_cnt < 256; t_cnt += 17) {
    const auto lower = hard_set({1.0, t_cnt});
    const auto higher = hard_set({1.0, t_cnt + 17});
    EXPECT_TRUE(std::includes(lower.begin(), lower.end(), higher.begin(), higher.end()));
  }
}

TEST(SummarizeCounts, NearestRank) {
  std::vector<PatchVerdict> v;
  for (std::size_t c = 1; c <= 10; ++c) v.push_back({c, false, {}});
  const auto s = summarize_counts(v);
  EXPECT_EQ(s.n, 10u);
  EXPECT_EQ(s.min, 1u);
  EXPECT_EQ(s.max, 10u);
  EXPECT_DOUBLE_EQ(s.mean, 5.5);
  EXPECT_EQ(s.percentiles.front(), (std::pair<int, std::size_t>{50, 5}));
  EXPECT_EQ(s.percentiles.back(), (std::pair<int, std::size_t>{99, 10}));
}

}  // namespace
}  // namespace specmosaic
