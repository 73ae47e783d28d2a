#include "specmosaic/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specmosaic/error.hpp"

namespace specmosaic {

namespace {

void check_dims(std::size_t height, std::size_t width, std::size_t bands) {
  if (height == 0 || width == 0 || bands == 0) {
    throw ShapeError("cube dimensions must be positive, got " + std::to_string(height) + "x" +
                     std::to_string(width) + "x" + std::to_string(bands));
  }
}

}  // namespace

SpectralCube::SpectralCube(std::size_t height, std::size_t width, std::size_t bands, double fill)
    : height_(height), width_(width), bands_(bands) {
  check_dims(height, width, bands);
  data_.assign(height * width * bands, fill);
}

SpectralCube::SpectralCube(std::size_t height, std::size_t width, std::size_t bands,
                           std::vector<double> data)
    : height_(height), width_(width), bands_(bands), data_(std::move(data)) {
  check_dims(height, width, bands);
  if (data_.size() != height * width * bands) {
    throw ShapeError("cube data length " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(height * width * bands));
  }
}

RealMap SpectralCube::band_map(std::size_t k) const {
  auto src = band(k);
  return RealMap(height_, width_, std::vector<double>(src.begin(), src.end()));
}

SfaPattern::SfaPattern(std::size_t period, std::vector<std::size_t> band_at)
    : period_(period), band_at_(std::move(band_at)) {
  if (period_ == 0) throw ValidationError("SFA period must be at least 1");
  const std::size_t n = period_ * period_;
  if (band_at_.size() != n) {
    throw ValidationError("SFA layout has " + std::to_string(band_at_.size()) +
                          " cells, expected " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (std::size_t b : band_at_) {
    if (b >= n || seen[b]) {
      throw ValidationError("SFA layout is not a bijection onto 0.." + std::to_string(n - 1));
    }
    seen[b] = true;
  }
}

SfaPattern SfaPattern::row_major(std::size_t period) {
  std::vector<std::size_t> layout(period * period);
  for (std::size_t k = 0; k < layout.size(); ++k) layout[k] = k;
  return SfaPattern(period, std::move(layout));
}

ValidationReport validate_cube(const SpectralCube& cube) {
  ValidationReport report;
  for (std::size_t k = 0; k < cube.bands(); ++k) {
    for (std::size_t u = 0; u < cube.height(); ++u) {
      for (std::size_t v = 0; v < cube.width(); ++v) {
        const double x = cube(u, v, k);
        const std::string where =
            "(" + std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(k) + ")";
        if (!std::isfinite(x)) {
          ++report.non_finite_count;
          if (report.violations.size() < ValidationReport::kMaxListed) {
            report.violations.push_back({ViolationKind::kNonFinite, u, v, k, "non-finite at " + where});
          }
        } else if (x < 0.0 || x > 1.0) {
          ++report.out_of_range_count;
          if (report.violations.size() < ValidationReport::kMaxListed) {
            report.violations.push_back({ViolationKind::kOutOfRange, u, v, k, "out of [0,1] at " + where});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace specmosaic
