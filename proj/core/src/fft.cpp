#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace specmosaic::detail {

namespace {

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

ComplexBuffer allocate(std::size_t n) {
  return ComplexBuffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

// FFTW's planner is not thread-safe; execution with fftw_execute_dft is.
// Plans are created once per size with FFTW_ESTIMATE (no timing, so the
// chosen algorithm, and therefore every output bit, is reproducible) and
// reused on fftw_malloc'ed buffers, which share the planning alignment.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t height, std::size_t width) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(height, width);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto in = allocate(height * width);
    auto out = allocate(height * width);
    fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(height), static_cast<int>(width), in.get(),
                                      out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, std::size_t>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void forward_dft2d(std::span<const double> in, std::size_t height, std::size_t width,
                   std::span<std::complex<double>> out) {
  const std::size_t n = height * width;
  fftw_plan plan = plan_cache().get(height, width);
  auto src = allocate(n);
  auto dst = allocate(n);
  for (std::size_t i = 0; i < n; ++i) {
    src[i][0] = in[i];
    src[i][1] = 0.0;
  }
  fftw_execute_dft(plan, src.get(), dst.get());
  for (std::size_t i = 0; i < n; ++i) out[i] = {dst[i][0], dst[i][1]};
}

}  // namespace specmosaic::detail
