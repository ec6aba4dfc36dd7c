#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace edscorr::detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in,
                                      int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<std::complex<double>> out(in.size());
  if (n == 0) return out;
  auto* buf_in = fftw_alloc_complex(n);
  auto* buf_out = fftw_alloc_complex(n);
  std::memcpy(buf_in, in.data(), sizeof(fftw_complex) * n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buf_in, buf_out,
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::memcpy(static_cast<void*>(out.data()), buf_out, sizeof(fftw_complex) * n);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf_in);
  fftw_free(buf_out);
  return out;
}

}  // namespace edscorr::detail
