#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace specmosaic::detail {

/// Unnormalized forward 2D DFT of a row-major height x width real array.
/// out must hold height * width values.
void forward_dft2d(std::span<const double> in, std::size_t height, std::size_t width,
                   std::span<std::complex<double>> out);

}  // namespace specmosaic::detail
