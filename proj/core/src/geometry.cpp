#include "specmosaic/geometry.hpp"

#include <string>

#include "specmosaic/error.hpp"

namespace specmosaic {

namespace {

constexpr std::array<std::string_view, 8> kNames = {
    "identity", "rot90cw", "rot180", "rot270cw", "flip_h", "flip_v", "transpose", "anti_transpose",
};

}  // namespace

std::string_view to_string(D4 op) noexcept { return kNames[static_cast<std::size_t>(op)]; }

std::optional<D4> parse_d4(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<D4>(i);
  }
  return std::nullopt;
}

D4 inverse(D4 op) noexcept {
  switch (op) {
    case D4::kRot90Cw:
      return D4::kRot270Cw;
    case D4::kRot270Cw:
      return D4::kRot90Cw;
    default:
      return op;
  }
}

bool swaps_axes(D4 op) noexcept {
  return op == D4::kRot90Cw || op == D4::kRot270Cw || op == D4::kTranspose ||
         op == D4::kAntiTranspose;
}

SpectralCube transform_d4(const SpectralCube& cube, D4 op) {
  const std::size_t h = cube.height();
  const std::size_t w = cube.width();
  const std::size_t out_h = swaps_axes(op) ? w : h;
  const std::size_t out_w = swaps_axes(op) ? h : w;
  SpectralCube out(out_h, out_w, cube.bands());

  // Source coordinate for output (u, v).
  auto source = [&](std::size_t u, std::size_t v) -> std::pair<std::size_t, std::size_t> {
    switch (op) {
      case D4::kIdentity:
        return {u, v};
      case D4::kRot90Cw:
        return {h - 1 - v, u};
      case D4::kRot180:
        return {h - 1 - u, w - 1 - v};
      case D4::kRot270Cw:
        return {v, w - 1 - u};
      case D4::kFlipH:
        return {u, w - 1 - v};
      case D4::kFlipV:
        return {h - 1 - u, v};
      case D4::kTranspose:
        return {v, u};
      case D4::kAntiTranspose:
        return {h - 1 - v, w - 1 - u};
    }
    return {u, v};
  };

  for (std::size_t k = 0; k < cube.bands(); ++k) {
    for (std::size_t u = 0; u < out_h; ++u) {
      for (std::size_t v = 0; v < out_w; ++v) {
        const auto [r, c] = source(u, v);
        out(u, v, k) = cube(r, c, k);
      }
    }
  }
  return out;
}

SpectralCube crop_aligned(const SpectralCube& cube, const PatchOrigin& origin, std::size_t period) {
  if (period == 0) throw AlignmentError("period must be at least 1");
  if (origin.row % period != 0 || origin.col % period != 0) {
    throw AlignmentError("origin (" + std::to_string(origin.row) + "," + std::to_string(origin.col) +
                         ") is not a multiple of period " + std::to_string(period));
  }
  if (origin.size_h == 0 || origin.size_w == 0 || origin.row + origin.size_h > cube.height() ||
      origin.col + origin.size_w > cube.width()) {
    throw BoundsError("window " + std::to_string(origin.size_h) + "x" + std::to_string(origin.size_w) +
                      " at (" + std::to_string(origin.row) + "," + std::to_string(origin.col) +
                      ") does not fit in " + std::to_string(cube.height()) + "x" +
                      std::to_string(cube.width()));
  }
  SpectralCube out(origin.size_h, origin.size_w, cube.bands());
  for (std::size_t k = 0; k < cube.bands(); ++k) {
    for (std::size_t u = 0; u < origin.size_h; ++u) {
      const double* src = &cube.band(k)[(origin.row + u) * cube.width() + origin.col];
      std::copy(src, src + origin.size_w, &out.band(k)[u * origin.size_w]);
    }
  }
  return out;
}

}  // namespace specmosaic
