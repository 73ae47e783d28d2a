#include "specmosaic/sfa.hpp"

#include <string>

#include "specmosaic/error.hpp"

namespace specmosaic {

SamplingLattice lattice_of(const SfaPattern& pattern, std::size_t band) {
  const std::size_t p = pattern.period();
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (pattern.band_at(i, j) == band) return {band, i, j, p};
    }
  }
  throw ShapeError("band " + std::to_string(band) + " is not part of the SFA pattern");
}

MosaicImage mosaic(const SpectralCube& cube, const SfaPattern& pattern) {
  if (cube.bands() != pattern.bands()) {
    throw ShapeError("cube has " + std::to_string(cube.bands()) + " bands but the pattern needs " +
                     std::to_string(pattern.bands()));
  }
  MosaicImage out(cube.height(), cube.width());
  for (std::size_t u = 0; u < cube.height(); ++u) {
    for (std::size_t v = 0; v < cube.width(); ++v) {
      out(u, v) = cube(u, v, band_at_pixel(pattern, u, v));
    }
  }
  return out;
}

MosaicImage remosaic(const SpectralCube& pseudo_cube, const SfaPattern& pattern) {
  return mosaic(pseudo_cube, pattern);
}

SpectralCube sparse_expand(const MosaicImage& mosaic, const SfaPattern& pattern) {
  SpectralCube out(mosaic.height(), mosaic.width(), pattern.bands(), 0.0);
  for (std::size_t u = 0; u < mosaic.height(); ++u) {
    for (std::size_t v = 0; v < mosaic.width(); ++v) {
      out(u, v, band_at_pixel(pattern, u, v)) = mosaic(u, v);
    }
  }
  return out;
}

}  // namespace specmosaic
