#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "specmosaic/types.hpp"

namespace specmosaic {

/// 10 log10(peak^2 / MSE) over all samples. Returns +infinity when MSE == 0.
double psnr(const SpectralCube& a, const SpectralCube& b, double peak = 1.0);

/// Per-band SSIM (11x11 Gaussian window, sigma 1.5, L = 1, K1 = 0.01,
/// K2 = 0.03, valid region only) averaged over bands.
/// Throws ShapeError if either spatial extent is below 11.
double ssim(const SpectralCube& a, const SpectralCube& b);

/// Mean spectral angle in degrees over pixels where both spectra have norm
/// >= 1e-12. Throws DegenerateInputError when no pixel qualifies.
double sam(const SpectralCube& a, const SpectralCube& b);

struct ImageMetrics {
  double psnr = 0.0;
  double ssim = 0.0;
  double sam = 0.0;
};

struct MetricReport {
  std::vector<ImageMetrics> per_image;
  double mean_psnr = 0.0;
  double mean_ssim = 0.0;
  double mean_sam = 0.0;
  double peak = 1.0;
};

struct EvalPair {
  SpectralCube reconstruction;
  SpectralCube reference;
};

using EvalLoader = std::function<EvalPair(std::size_t)>;

struct EvalOptions {
  double peak = 1.0;
  bool clamp = false;  // clamp reconstructions to [0, 1] before scoring
};

/// Scores each pair and averages the per-image values in index order.
/// Throws ValidationError on an empty sequence and RecordError on a bad pair.
MetricReport evaluate_dataset(std::size_t count, const EvalLoader& load, const EvalOptions& options);
MetricReport evaluate_dataset(const std::vector<EvalPair>& pairs, const EvalOptions& options);

}  // namespace specmosaic
