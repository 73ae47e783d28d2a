#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "specmosaic/types.hpp"

namespace specmosaic::testing {

/// Smooth periodic content: a few low-frequency cosines per band, values in
/// roughly [0.2, 0.8]. All energy sits within 3 bins of DC.
inline SpectralCube smooth_cube(std::size_t n, std::size_t bands, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> freq(0, 2);
  SpectralCube c(n, n, bands);
  for (std::size_t k = 0; k < bands; ++k) {
    const int fu1 = freq(rng), fv1 = 1 + freq(rng), fu2 = 1 + freq(rng), fv2 = freq(rng);
    const double p1 = phase(rng), p2 = phase(rng);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        const double t = 2.0 * std::numbers::pi / static_cast<double>(n);
        c(u, v, k) = 0.5 + 0.15 * std::cos(t * (fu1 * double(u) + fv1 * double(v)) + p1) +
                     0.1 * std::cos(t * (fu2 * double(u) + fv2 * double(v)) + p2);
      }
  }
  return c;
}

/// Adds amplitude * sin(2 pi f u) to one band (u = row index).
inline SpectralCube add_row_sinusoid(SpectralCube c, std::size_t band, double amplitude, double freq) {
  for (std::size_t u = 0; u < c.height(); ++u)
    for (std::size_t v = 0; v < c.width(); ++v)
      c(u, v, band) += amplitude * std::sin(2.0 * std::numbers::pi * freq * double(u));
  return c;
}

inline SpectralCube add_offset(SpectralCube c, double offset) {
  for (double& x : c.data()) x += offset;
  return c;
}

/// smooth_cube remapped into [0.5, 0.78] on a 2^-24 grid. Every value is
/// exact in float32, and so is the +0.2 shift up to one constant rounding
/// offset (the result stays inside [0.5, 1)). Stored fixtures built from it
/// differ from their contaminated copies only by the intended change, not by
/// content-dependent f32 rounding noise.
inline SpectralCube float_exact_cube(std::size_t n, std::size_t bands, unsigned seed) {
  SpectralCube c = smooth_cube(n, bands, seed);
  for (double& x : c.data()) x = std::round((0.64 + 0.55 * (x - 0.5)) * 0x1p24) / 0x1p24;
  return c;
}

}  // namespace specmosaic::testing
