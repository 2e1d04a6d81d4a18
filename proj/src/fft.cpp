#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace canonical_tf::detail {
namespace {

struct FftwDeleter {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

Buffer allocate(std::size_t n) {
  return Buffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

// Planning is not thread safe in FFTW; execution with new-array execute is.
std::mutex plan_mutex;

fftw_plan forward_plan(std::size_t n) {
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard lock(plan_mutex);
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  Buffer in = allocate(n);
  Buffer out = allocate(n);
  // FFTW_ESTIMATE keeps plans (and therefore results) identical across runs.
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  plans.emplace(n, plan);
  return plan;
}

}  // namespace

void dft_forward(std::span<std::complex<double>> data) {
  const std::size_t n = data.size();
  if (n == 0) return;
  fftw_plan plan = forward_plan(n);
  Buffer in = allocate(n);
  Buffer out = allocate(n);
  std::memcpy(in.get(), data.data(), sizeof(fftw_complex) * n);
  fftw_execute_dft(plan, in.get(), out.get());
  std::memcpy(static_cast<void*>(data.data()), out.get(), sizeof(fftw_complex) * n);
}

}  // namespace canonical_tf::detail
