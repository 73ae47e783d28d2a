#include "specmosaic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "specmosaic/error.hpp"
#include "specmosaic/freqsel.hpp"
#include "specmosaic/parallel.hpp"

namespace specmosaic {

namespace {

constexpr std::size_t kSsimRadius = 5;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimL = 1.0;
constexpr double kSsimK1 = 0.01;
constexpr double kSsimK2 = 0.03;
constexpr double kSamNormGuard = 1e-12;

void require_same_shape(const SpectralCube& a, const SpectralCube& b, const char* metric) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string(metric) + ": operands differ in shape (" +
                     std::to_string(a.height()) + "x" + std::to_string(a.width()) + "x" +
                     std::to_string(a.bands()) + " vs " + std::to_string(b.height()) + "x" +
                     std::to_string(b.width()) + "x" + std::to_string(b.bands()) + ")");
  }
}

// Gaussian-weighted window sums at every position where the 11x11 window
// fits entirely (valid region).
class ValidWindow {
 public:
  ValidWindow(std::size_t height, std::size_t width)
      : h_(height), w_(width), taps_(gaussian_kernel(kSsimSigma, kSsimRadius)) {}

  std::size_t out_h() const { return h_ - 2 * kSsimRadius; }
  std::size_t out_w() const { return w_ - 2 * kSsimRadius; }

  std::vector<double> apply(const std::vector<double>& x) const {
    const std::size_t n = taps_.size();
    std::vector<double> rows(h_ * out_w());
    for (std::size_t u = 0; u < h_; ++u) {
      for (std::size_t v = 0; v < out_w(); ++v) {
        double acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) acc += taps_[t] * x[u * w_ + v + t];
        rows[u * out_w() + v] = acc;
      }
    }
    std::vector<double> out(out_h() * out_w());
    for (std::size_t u = 0; u < out_h(); ++u) {
      for (std::size_t v = 0; v < out_w(); ++v) {
        double acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) acc += taps_[t] * rows[(u + t) * out_w() + v];
        out[u * out_w() + v] = acc;
      }
    }
    return out;
  }

 private:
  std::size_t h_;
  std::size_t w_;
  std::vector<double> taps_;
};

double ssim_band(std::span<const double> a, std::span<const double> b, const ValidWindow& window) {
  const std::size_t n = a.size();
  std::vector<double> xa(a.begin(), a.end());
  std::vector<double> xb(b.begin(), b.end());
  std::vector<double> aa(n), bb(n), ab(n);
  for (std::size_t i = 0; i < n; ++i) {
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  const auto mu_a = window.apply(xa);
  const auto mu_b = window.apply(xb);
  const auto e_aa = window.apply(aa);
  const auto e_bb = window.apply(bb);
  const auto e_ab = window.apply(ab);

  const double c1 = (kSsimK1 * kSsimL) * (kSsimK1 * kSsimL);
  const double c2 = (kSsimK2 * kSsimL) * (kSsimK2 * kSsimL);
  double sum = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double var_a = e_aa[i] - mu_a[i] * mu_a[i];
    const double var_b = e_bb[i] - mu_b[i] * mu_b[i];
    const double cov = e_ab[i] - mu_a[i] * mu_b[i];
    // Written so that a == b gives numerator == denominator bit for bit.
    const double num = (2.0 * (mu_a[i] * mu_b[i]) + c1) * (2.0 * cov + c2);
    const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (var_a + var_b + c2);
    sum += num / den;
  }
  return sum / static_cast<double>(mu_a.size());
}

SpectralCube clamp_unit(SpectralCube cube) {
  for (double& x : cube.data()) x = std::clamp(x, 0.0, 1.0);
  return cube;
}

}  // namespace

double psnr(const SpectralCube& a, const SpectralCube& b, double peak) {
  require_same_shape(a, b, "psnr");
  if (!(peak > 0.0)) throw ValidationError("psnr: peak must be positive");
  double sse = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    sse += d * d;
  }
  const double mse = sse / static_cast<double>(da.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const SpectralCube& a, const SpectralCube& b) {
  require_same_shape(a, b, "ssim");
  const std::size_t window = 2 * kSsimRadius + 1;
  if (a.height() < window || a.width() < window) {
    throw ShapeError("ssim: spatial extent " + std::to_string(a.height()) + "x" +
                     std::to_string(a.width()) + " is smaller than the 11x11 window");
  }
  const ValidWindow win(a.height(), a.width());
  double sum = 0.0;
  for (std::size_t k = 0; k < a.bands(); ++k) sum += ssim_band(a.band(k), b.band(k), win);
  return sum / static_cast<double>(a.bands());
}

double sam(const SpectralCube& a, const SpectralCube& b) {
  require_same_shape(a, b, "sam");
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t u = 0; u < a.height(); ++u) {
    for (std::size_t v = 0; v < a.width(); ++v) {
      double dot = 0.0, na = 0.0, nb = 0.0;
      for (std::size_t k = 0; k < a.bands(); ++k) {
        const double x = a(u, v, k);
        const double y = b(u, v, k);
        dot += x * y;
        na += x * x;
        nb += y * y;
      }
      if (std::sqrt(na) < kSamNormGuard || std::sqrt(nb) < kSamNormGuard) continue;
      const double cosine = std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
      total += std::acos(cosine);
      ++used;
    }
  }
  if (used == 0) throw DegenerateInputError("sam: every pixel has a zero spectrum");
  return total / static_cast<double>(used) * 180.0 / std::numbers::pi;
}

MetricReport evaluate_dataset(std::size_t count, const EvalLoader& load, const EvalOptions& options) {
  if (count == 0) throw ValidationError("evaluate_dataset: empty sequence");
  MetricReport report;
  report.peak = options.peak;
  report.per_image.resize(count);
  parallel_for(count, [&](std::size_t i) {
    try {
      EvalPair pair = load(i);
      const SpectralCube recon =
          options.clamp ? clamp_unit(std::move(pair.reconstruction)) : std::move(pair.reconstruction);
      report.per_image[i] = {psnr(recon, pair.reference, options.peak), ssim(recon, pair.reference),
                             sam(recon, pair.reference)};
    } catch (const RecordError&) {
      throw;
    } catch (const std::exception& e) {
      throw RecordError(i, e.what());
    }
  });
  for (const auto& m : report.per_image) {
    report.mean_psnr += m.psnr;
    report.mean_ssim += m.ssim;
    report.mean_sam += m.sam;
  }
  const auto n = static_cast<double>(count);
  report.mean_psnr /= n;
  report.mean_ssim /= n;
  report.mean_sam /= n;
  return report;
}

MetricReport evaluate_dataset(const std::vector<EvalPair>& pairs, const EvalOptions& options) {
  return evaluate_dataset(
      pairs.size(), [&](std::size_t i) { return pairs[i]; }, options);
}

}  // namespace specmosaic
