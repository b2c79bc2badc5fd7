#pragma once

#include <span>

#include "bohmlab/grid.hpp"

namespace bohmlab {

/// Thin FFTW wrapper for complex 1-d transforms of a fixed power-of-two size.
///
/// Plans are created with FFTW_ESTIMATE (deterministic) under a global planner
/// lock; execution copies through internally aligned buffers so callers can
/// pass plain std::vector storage.  Instances are not thread-safe; use
/// fft_for_size() to get a per-thread cached instance.
class Fft {
 public:
  explicit Fft(int n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int size() const { return n_; }

  /// In-place DFT, unnormalized: out_m = sum_j in_j exp(-2*pi*i*j*m/n).
  void forward(std::span<cplx> data);
  /// In-place inverse DFT, normalized by 1/n.
  void inverse(std::span<cplx> data);

 private:
  int n_;
  void* in_;        // fftw_complex*
  void* plan_fwd_;  // fftw_plan
  void* plan_bwd_;
};

/// Per-thread cache of Fft instances keyed by size.
Fft& fft_for_size(int n);

}  // namespace bohmlab
