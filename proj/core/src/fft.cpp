#include "qi/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace qi {

namespace {

// FFTW's planner is not reentrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void dft_inplace(std::span<std::complex<double>> data, std::span<const std::int64_t> sizes,
                 FftSign sign) {
  std::int64_t total = 1;
  std::vector<int> n;
  n.reserve(sizes.size());
  for (std::int64_t s : sizes) {
    if (s <= 0 || s > (std::int64_t{1} << 30)) throw std::invalid_argument("bad DFT axis length");
    n.push_back(static_cast<int>(s));
    total *= s;
  }
  if (total != static_cast<std::int64_t>(data.size())) {
    throw std::invalid_argument("DFT buffer size does not match axis lengths");
  }
  if (total == 1) return;

  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int dir = sign == FftSign::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), buf, buf, dir, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

std::int64_t next_pow2(std::int64_t n) {
  std::int64_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace qi
