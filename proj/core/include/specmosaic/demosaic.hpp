#pragma once

#include <functional>

#include "specmosaic/types.hpp"

namespace specmosaic {

/// Any reconstruction from a mosaic to a full cube.
using Demosaicer = std::function<SpectralCube(const MosaicImage&, const SfaPattern&)>;

/// Per-band bilinear interpolation between lattice sites (the WB baseline).
///
/// Lattice samples are copied through unchanged, so remosaic() of the result
/// returns the input. Beyond the outermost lattice row or column the nearest
/// site is replicated. Throws ShapeError if the mosaic is smaller than one
/// pattern period in either direction, since some band would have no sample.
SpectralCube wb_bilinear(const MosaicImage& mosaic, const SfaPattern& pattern);

}  // namespace specmosaic
