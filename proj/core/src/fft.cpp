#include "bohmlab/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "bohmlab/errors.hpp"

namespace bohmlab {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(int n) : n_(n) {
  if (n <= 0) throw InternalError("Fft: size must be positive");
  std::lock_guard<std::mutex> lock(planner_mutex());
  in_ = fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n));
  if (!in_) throw InternalError("Fft: allocation failed");
  auto* buf = static_cast<fftw_complex*>(in_);
  plan_fwd_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(in_);
}

void Fft::forward(std::span<cplx> data) {
  if (static_cast<int>(data.size()) != n_) throw InternalError("Fft::forward: size mismatch");
  std::memcpy(in_, data.data(), sizeof(cplx) * data.size());
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(data.data(), in_, sizeof(cplx) * data.size());
}

void Fft::inverse(std::span<cplx> data) {
  if (static_cast<int>(data.size()) != n_) throw InternalError("Fft::inverse: size mismatch");
  std::memcpy(in_, data.data(), sizeof(cplx) * data.size());
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  const double scale = 1.0 / n_;
  auto* buf = reinterpret_cast<cplx*>(in_);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = buf[i] * scale;
}

Fft& fft_for_size(int n) {
  thread_local std::map<int, std::unique_ptr<Fft>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Fft>(n)).first;
  return *it->second;
}

}  // namespace bohmlab
