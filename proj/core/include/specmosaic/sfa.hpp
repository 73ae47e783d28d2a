#pragma once

#include <cstddef>

#include "specmosaic/types.hpp"

namespace specmosaic {

/// Position of one band inside the SFA period cell.
struct SamplingLattice {
  std::size_t band;
  std::size_t offset_row;
  std::size_t offset_col;
  std::size_t period;
};

SamplingLattice lattice_of(const SfaPattern& pattern, std::size_t band);

/// band_at(u mod period, v mod period).
inline std::size_t band_at_pixel(const SfaPattern& pattern, std::size_t u, std::size_t v) {
  return pattern.band_at(u % pattern.period(), v % pattern.period());
}

/// Mask indicator M_{i,j}(u, v): 1 iff pixel (u, v) falls on cell (i, j).
inline int mask_value(const SfaPattern& pattern, std::size_t i, std::size_t j, std::size_t u,
                      std::size_t v) {
  return (u % pattern.period() == i && v % pattern.period() == j) ? 1 : 0;
}

/// Simulated SFA capture: one sample per pixel from the band the pattern assigns.
/// Throws ShapeError unless cube.bands() == period^2.
MosaicImage mosaic(const SpectralCube& cube, const SfaPattern& pattern);

/// Regenerates a mosaic from a (pseudo) label cube; same contract as mosaic().
MosaicImage remosaic(const SpectralCube& pseudo_cube, const SfaPattern& pattern);

/// Places each mosaic sample in its own band; every other entry is zero.
SpectralCube sparse_expand(const MosaicImage& mosaic, const SfaPattern& pattern);

}  // namespace specmosaic
