#pragma once

// Frequency-domain artifact detection and hard-patch selection.
//
// Two cubes are compared channel by channel: each band is transformed with a
// 2D DFT, shifted so DC sits at (H/2, W/2), converted to log magnitude, and
// the absolute difference is Gaussian smoothed. The channel-wise maximum is
// then restricted to an annulus around DC. A patch is hard when more than
// t_cnt bins of that map exceed t_var.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "specmosaic/types.hpp"

namespace specmosaic {

struct FreqParams {
  double epsilon = 1e-8;
  double blur_sigma = 1.5;
  std::size_t blur_radius = 5;
  double r_low = 0.08;
  double r_high = 0.75;

  /// Throws ValidationError when an invariant is broken.
  void validate() const;
};

struct SelectionParams {
  double t_var = 1.0;
  std::size_t t_cnt = 8;

  void validate() const;
};

struct FrequencyVariationMap {
  RealMap values;
  std::size_t dc_row = 0;
  std::size_t dc_col = 0;
};

struct PatchVerdict {
  std::size_t count = 0;
  bool is_hard = false;
  SelectionParams params;
};

/// Unnormalized forward 2D DFT with DC moved to (floor(H/2), floor(W/2)).
ComplexMap centered_spectrum(const RealMap& band);

/// ln(|S| + epsilon), elementwise.
RealMap log_magnitude(const ComplexMap& spectrum, double epsilon);

/// Normalized 1D Gaussian taps, length 2 * radius + 1.
std::vector<double> gaussian_kernel(double sigma, std::size_t radius);

/// Separable Gaussian smoothing with replicated borders.
RealMap gaussian_blur(const RealMap& map, double sigma, std::size_t radius);

/// Zeroes every bin whose distance d from (dc_row, dc_col) falls outside
/// [r_low * R, r_high * R], R = min(H, W) / 2.
void annulus_bandpass(RealMap& map, std::size_t dc_row, std::size_t dc_col, double r_low,
                      double r_high);

/// Intermediate products, exposed for inspection and testing.
struct FrequencyStages {
  std::vector<RealMap> per_channel;  // blurred |M1 - M2| per band
  RealMap channel_max;               // before the bandpass
  FrequencyVariationMap map;
};

FrequencyStages frequency_variation_stages(const SpectralCube& c1, const SpectralCube& c2,
                                           const FreqParams& params);

/// Throws ShapeError if c1 and c2 differ in shape.
FrequencyVariationMap frequency_variation_map(const SpectralCube& c1, const SpectralCube& c2,
                                              const FreqParams& params);

/// count = #{map > t_var}; hard iff count > t_cnt.
PatchVerdict classify_patch(const FrequencyVariationMap& map, const SelectionParams& params);

struct PatchPair {
  SpectralCube reference;
  SpectralCube comparison;
};

struct SelectionReport {
  std::vector<PatchVerdict> verdicts;    // input order
  std::vector<std::size_t> hard_indices;  // ascending
};

/// Supplies pair i on demand so large datasets need not be resident.
using PairLoader = std::function<PatchPair(std::size_t)>;

/// Classifies every pair. Pairs may be processed concurrently; the report is
/// independent of the schedule. A failing pair aborts with RecordError.
SelectionReport select_hard(std::size_t count, const PairLoader& load, const FreqParams& fparams,
                            const SelectionParams& sparams);
SelectionReport select_hard(std::span<const PatchPair> pairs, const FreqParams& fparams,
                            const SelectionParams& sparams);

/// Summary of verdict counts, used to pick thresholds for a new camera.
struct CountSummary {
  std::size_t n = 0;
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
  std::vector<std::pair<int, std::size_t>> percentiles;  // (percent, count), nearest rank
};

CountSummary summarize_counts(std::span<const PatchVerdict> verdicts);

}  // namespace specmosaic
