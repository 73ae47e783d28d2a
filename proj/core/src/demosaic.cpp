#include "specmosaic/demosaic.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "specmosaic/error.hpp"
#include "specmosaic/sfa.hpp"

namespace specmosaic {

namespace {

// Bracketing lattice sites along one axis: positions lo <= x <= hi with
// weight t toward hi. Outside the outermost sites lo == hi (replication).
struct Bracket {
  std::size_t lo;
  std::size_t hi;
  double t;
};

std::vector<Bracket> brackets(std::size_t extent, std::size_t offset, std::size_t period) {
  std::vector<Bracket> out(extent);
  const std::size_t last = offset + ((extent - 1 - offset) / period) * period;
  for (std::size_t x = 0; x < extent; ++x) {
    if (x <= offset) {
      out[x] = {offset, offset, 0.0};
    } else if (x >= last) {
      out[x] = {last, last, 0.0};
    } else {
      const std::size_t lo = offset + ((x - offset) / period) * period;
      out[x] = {lo, lo + period, static_cast<double>(x - lo) / static_cast<double>(period)};
    }
  }
  return out;
}

}  // namespace

SpectralCube wb_bilinear(const MosaicImage& m, const SfaPattern& pattern) {
  const std::size_t p = pattern.period();
  if (m.height() < p || m.width() < p) {
    throw ShapeError("mosaic " + std::to_string(m.height()) + "x" + std::to_string(m.width()) +
                     " is smaller than one SFA period (" + std::to_string(p) + ")");
  }
  SpectralCube out(m.height(), m.width(), pattern.bands());
  for (std::size_t k = 0; k < pattern.bands(); ++k) {
    const SamplingLattice lat = lattice_of(pattern, k);
    const auto rows = brackets(m.height(), lat.offset_row, p);
    const auto cols = brackets(m.width(), lat.offset_col, p);
    auto plane = out.band(k);
    for (std::size_t u = 0; u < m.height(); ++u) {
      const Bracket& r = rows[u];
      for (std::size_t v = 0; v < m.width(); ++v) {
        const Bracket& c = cols[v];
        // std::lerp is exact at t = 0 and stays within [a, b], so lattice
        // samples pass through and the output never leaves the input range.
        const double top = std::lerp(m(r.lo, c.lo), m(r.lo, c.hi), c.t);
        const double bottom = std::lerp(m(r.hi, c.lo), m(r.hi, c.hi), c.t);
        plane[u * m.width() + v] = std::lerp(top, bottom, r.t);
      }
    }
  }
  return out;
}

}  // namespace specmosaic
