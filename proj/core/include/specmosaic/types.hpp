#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specmosaic {

/// Dense 2D array, row-major.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t height, std::size_t width, T fill = T{})
      : height_(height), width_(width), data_(height * width, fill) {}
  Grid(std::size_t height, std::size_t width, std::vector<T> data);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }
  const T& operator()(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }

  std::span<T> data() & noexcept { return data_; }
  std::span<const T> data() const& noexcept { return data_; }
  std::span<const T> data() && = delete;  // would dangle

  bool operator==(const Grid&) const = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<T> data_;
};

template <class T>
Grid<T>::Grid(std::size_t height, std::size_t width, std::vector<T> data)
    : height_(height), width_(width), data_(std::move(data)) {
  if (data_.size() != height_ * width_) {
    throw std::invalid_argument("Grid: data length does not match height * width");
  }
}

using RealMap = Grid<double>;
using ComplexMap = Grid<std::complex<double>>;

/// Raw single-channel SFA sensor frame.
class MosaicImage : public Grid<double> {
 public:
  using Grid<double>::Grid;
  explicit MosaicImage(Grid<double> grid) : Grid<double>(std::move(grid)) {}
};

/// H x W x C cube stored band-sequential, row-major within each band.
class SpectralCube {
 public:
  SpectralCube() = default;
  SpectralCube(std::size_t height, std::size_t width, std::size_t bands, double fill = 0.0);
  SpectralCube(std::size_t height, std::size_t width, std::size_t bands, std::vector<double> data);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t bands() const noexcept { return bands_; }
  std::size_t plane_size() const noexcept { return height_ * width_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t row, std::size_t col, std::size_t band) {
    return data_[band * plane_size() + row * width_ + col];
  }
  double operator()(std::size_t row, std::size_t col, std::size_t band) const {
    return data_[band * plane_size() + row * width_ + col];
  }

  std::span<double> band(std::size_t k) & { return {data_.data() + k * plane_size(), plane_size()}; }
  std::span<const double> band(std::size_t k) && = delete;
  std::span<const double> band(std::size_t k) const& {
    return {data_.data() + k * plane_size(), plane_size()};
  }

  /// Copies one band out as a standalone 2D map.
  RealMap band_map(std::size_t k) const;

  std::span<double> data() & noexcept { return data_; }
  std::span<const double> data() const& noexcept { return data_; }
  std::span<const double> data() && = delete;

  bool same_shape(const SpectralCube& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_ && bands_ == other.bands_;
  }

  bool operator==(const SpectralCube&) const = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::size_t bands_ = 0;
  std::vector<double> data_;
};

/// Periodic SFA layout: band_at(i, j) for the period x period cell grid.
///
/// Every band index in [0, period^2) appears exactly once per period.
class SfaPattern {
 public:
  /// Throws ValidationError unless band_at is a bijection onto 0..period^2-1.
  SfaPattern(std::size_t period, std::vector<std::size_t> band_at);

  /// k = i * period + j.
  static SfaPattern row_major(std::size_t period);

  std::size_t period() const noexcept { return period_; }
  std::size_t bands() const noexcept { return period_ * period_; }
  std::size_t band_at(std::size_t i, std::size_t j) const { return band_at_[i * period_ + j]; }
  std::span<const std::size_t> layout() const noexcept { return band_at_; }

  bool operator==(const SfaPattern&) const = default;

 private:
  std::size_t period_;
  std::vector<std::size_t> band_at_;
};

/// Top-left corner and extent of a patch inside its parent image.
struct PatchOrigin {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t size_h = 0;
  std::size_t size_w = 0;

  bool operator==(const PatchOrigin&) const = default;
};

enum class ViolationKind { kNonFinite, kOutOfRange };

struct Violation {
  ViolationKind kind;
  std::size_t row;
  std::size_t col;
  std::size_t band;
  std::string message;
};

/// Result of validate_cube. Out-of-range samples are warnings; non-finite are fatal.
struct ValidationReport {
  static constexpr std::size_t kMaxListed = 10;

  std::vector<Violation> violations;  // first kMaxListed offenders, scan order
  std::size_t non_finite_count = 0;
  std::size_t out_of_range_count = 0;

  bool empty() const noexcept { return non_finite_count == 0 && out_of_range_count == 0; }
  bool fatal() const noexcept { return non_finite_count != 0; }
};

ValidationReport validate_cube(const SpectralCube& cube);

}  // namespace specmosaic
