#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "specmosaic/types.hpp"

namespace specmosaic {

/// The eight symmetries of the square.
enum class D4 {
  kIdentity,
  kRot90Cw,
  kRot180,
  kRot270Cw,
  kFlipH,
  kFlipV,
  kTranspose,
  kAntiTranspose,
};

/// Canonical augmentation order.
inline constexpr std::array<D4, 8> kAllD4 = {
    D4::kIdentity, D4::kRot90Cw, D4::kRot180,    D4::kRot270Cw,
    D4::kFlipH,    D4::kFlipV,   D4::kTranspose, D4::kAntiTranspose,
};

std::string_view to_string(D4 op) noexcept;
std::optional<D4> parse_d4(std::string_view name) noexcept;
D4 inverse(D4 op) noexcept;

/// True for the four ops that swap height and width.
bool swaps_axes(D4 op) noexcept;

/// Applies op to every band. rot90cw: out(u, v) = in(H-1-v, u).
SpectralCube transform_d4(const SpectralCube& cube, D4 op);

/// Copies a period-aligned window, all bands.
///
/// Throws AlignmentError if origin.row or origin.col is not a multiple of
/// period, BoundsError if the window leaves the cube or is empty.
SpectralCube crop_aligned(const SpectralCube& cube, const PatchOrigin& origin, std::size_t period);

}  // namespace specmosaic
