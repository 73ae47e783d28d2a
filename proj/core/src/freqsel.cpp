#include "specmosaic/freqsel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "specmosaic/error.hpp"
#include "specmosaic/parallel.hpp"

namespace specmosaic {

void FreqParams::validate() const {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (!(blur_sigma > 0.0)) throw ValidationError("blur sigma must be positive");
  if (blur_radius < 1) throw ValidationError("blur radius must be at least 1");
  if (!(r_low >= 0.0 && r_low < r_high && r_high <= 1.0)) {
    throw ValidationError("bandpass radii must satisfy 0 <= r_low < r_high <= 1");
  }
}

void SelectionParams::validate() const {
  if (!(t_var >= 0.0)) throw ValidationError("t_var must be non-negative");
}

ComplexMap centered_spectrum(const RealMap& band) {
  const std::size_t h = band.height();
  const std::size_t w = band.width();
  if (h == 0 || w == 0) throw ShapeError("spectrum of an empty map");
  ComplexMap raw(h, w);
  detail::forward_dft2d(band.data(), h, w, raw.data());
  ComplexMap shifted(h, w);
  for (std::size_t u = 0; u < h; ++u) {
    for (std::size_t v = 0; v < w; ++v) {
      shifted((u + h / 2) % h, (v + w / 2) % w) = raw(u, v);
    }
  }
  return shifted;
}

RealMap log_magnitude(const ComplexMap& spectrum, double epsilon) {
  RealMap out(spectrum.height(), spectrum.width());
  auto src = spectrum.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = std::log(std::abs(src[i]) + epsilon);
  return out;
}

std::vector<double> gaussian_kernel(double sigma, std::size_t radius) {
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    const double x = static_cast<double>(i) - static_cast<double>(radius);
    taps[i] = std::exp(-(x * x) / (2.0 * sigma * sigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

RealMap gaussian_blur(const RealMap& map, double sigma, std::size_t radius) {
  if (!(sigma > 0.0)) throw ValidationError("blur sigma must be positive");
  if (radius < 1) throw ValidationError("blur radius must be at least 1");
  const std::size_t h = map.height();
  const std::size_t w = map.width();
  const auto taps = gaussian_kernel(sigma, radius);
  const auto r = static_cast<std::ptrdiff_t>(radius);
  auto clamp = [](std::ptrdiff_t x, std::size_t n) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(x, 0, static_cast<std::ptrdiff_t>(n) - 1));
  };

  RealMap horizontal(h, w);
  for (std::size_t u = 0; u < h; ++u) {
    for (std::size_t v = 0; v < w; ++v) {
      double acc = 0.0;
      for (std::ptrdiff_t d = -r; d <= r; ++d) {
        acc += taps[static_cast<std::size_t>(d + r)] * map(u, clamp(static_cast<std::ptrdiff_t>(v) + d, w));
      }
      horizontal(u, v) = acc;
    }
  }
  RealMap out(h, w);
  for (std::size_t u = 0; u < h; ++u) {
    for (std::size_t v = 0; v < w; ++v) {
      double acc = 0.0;
      for (std::ptrdiff_t d = -r; d <= r; ++d) {
        acc += taps[static_cast<std::size_t>(d + r)] *
               horizontal(clamp(static_cast<std::ptrdiff_t>(u) + d, h), v);
      }
      out(u, v) = acc;
    }
  }
  return out;
}

void annulus_bandpass(RealMap& map, std::size_t dc_row, std::size_t dc_col, double r_low,
                      double r_high) {
  const double r_max = static_cast<double>(std::min(map.height(), map.width())) / 2.0;
  const double inner = r_low * r_max;
  const double outer = r_high * r_max;
  for (std::size_t u = 0; u < map.height(); ++u) {
    for (std::size_t v = 0; v < map.width(); ++v) {
      const double du = static_cast<double>(u) - static_cast<double>(dc_row);
      const double dv = static_cast<double>(v) - static_cast<double>(dc_col);
      const double d = std::sqrt(du * du + dv * dv);
      if (d < inner || d > outer) map(u, v) = 0.0;
    }
  }
}

FrequencyStages frequency_variation_stages(const SpectralCube& c1, const SpectralCube& c2,
                                           const FreqParams& params) {
  params.validate();
  if (!c1.same_shape(c2)) {
    throw ShapeError("cannot compare cubes of shape " + std::to_string(c1.height()) + "x" +
                     std::to_string(c1.width()) + "x" + std::to_string(c1.bands()) + " and " +
                     std::to_string(c2.height()) + "x" + std::to_string(c2.width()) + "x" +
                     std::to_string(c2.bands()));
  }
  const std::size_t h = c1.height();
  const std::size_t w = c1.width();

  FrequencyStages stages;
  stages.per_channel.resize(c1.bands());
  for (std::size_t k = 0; k < c1.bands(); ++k) {
    const RealMap m1 = log_magnitude(centered_spectrum(c1.band_map(k)), params.epsilon);
    const RealMap m2 = log_magnitude(centered_spectrum(c2.band_map(k)), params.epsilon);
    RealMap diff(h, w);
    for (std::size_t i = 0; i < diff.size(); ++i) diff.data()[i] = std::abs(m1.data()[i] - m2.data()[i]);
    stages.per_channel[k] = gaussian_blur(diff, params.blur_sigma, params.blur_radius);
  }

  stages.channel_max = stages.per_channel.front();
  for (std::size_t k = 1; k < stages.per_channel.size(); ++k) {
    auto acc = stages.channel_max.data();
    auto src = stages.per_channel[k].data();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::max(acc[i], src[i]);
  }

  stages.map.values = stages.channel_max;
  stages.map.dc_row = h / 2;
  stages.map.dc_col = w / 2;
  annulus_bandpass(stages.map.values, stages.map.dc_row, stages.map.dc_col, params.r_low,
                   params.r_high);
  return stages;
}

FrequencyVariationMap frequency_variation_map(const SpectralCube& c1, const SpectralCube& c2,
                                              const FreqParams& params) {
  return std::move(frequency_variation_stages(c1, c2, params).map);
}

PatchVerdict classify_patch(const FrequencyVariationMap& map, const SelectionParams& params) {
  PatchVerdict verdict;
  verdict.params = params;
  for (double x : map.values.data()) {
    if (x > params.t_var) ++verdict.count;
  }
  verdict.is_hard = verdict.count > params.t_cnt;
  return verdict;
}

SelectionReport select_hard(std::size_t count, const PairLoader& load, const FreqParams& fparams,
                            const SelectionParams& sparams) {
  fparams.validate();
  sparams.validate();
  SelectionReport report;
  report.verdicts.resize(count);
  parallel_for(count, [&](std::size_t i) {
    try {
      const PatchPair pair = load(i);
      report.verdicts[i] =
          classify_patch(frequency_variation_map(pair.reference, pair.comparison, fparams), sparams);
    } catch (const RecordError&) {
      throw;
    } catch (const std::exception& e) {
      throw RecordError(i, e.what());
    }
  });
  for (std::size_t i = 0; i < count; ++i) {
    if (report.verdicts[i].is_hard) report.hard_indices.push_back(i);
  }
  return report;
}

SelectionReport select_hard(std::span<const PatchPair> pairs, const FreqParams& fparams,
                            const SelectionParams& sparams) {
  return select_hard(
      pairs.size(), [&](std::size_t i) { return pairs[i]; }, fparams, sparams);
}

CountSummary summarize_counts(std::span<const PatchVerdict> verdicts) {
  CountSummary summary;
  summary.n = verdicts.size();
  if (verdicts.empty()) return summary;
  std::vector<std::size_t> counts;
  counts.reserve(verdicts.size());
  double total = 0.0;
  for (const auto& v : verdicts) {
    counts.push_back(v.count);
    total += static_cast<double>(v.count);
  }
  std::sort(counts.begin(), counts.end());
  summary.min = counts.front();
  summary.max = counts.back();
  summary.mean = total / static_cast<double>(counts.size());
  for (int pct : {50, 75, 90, 95, 99}) {
    // Nearest rank: ceil(p/100 * n), 1-based.
    const auto n = counts.size();
    std::size_t rank = (static_cast<std::size_t>(pct) * n + 99) / 100;
    rank = std::clamp<std::size_t>(rank, 1, n);
    summary.percentiles.emplace_back(pct, counts[rank - 1]);
  }
  return summary;
}

}  // namespace specmosaic
