// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <type_traits>
#include <vector>

#include "grid_calculus/fields.hpp"
#include "grid_calculus/grid.hpp"

namespace liedrag {

using Complex = std::complex<double>;

/// SIMD-aligned storage so transforms run on FFTW's vectorized kernels.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}
  T* allocate(std::size_t n);
  void deallocate(T* p, std::size_t) noexcept;
  // Default-initialize: every transform overwrites its output anyway.
  template <class U>
  void construct(U* p) noexcept(std::is_nothrow_default_constructible_v<U>) {
    ::new (static_cast<void*>(p)) U;
  }
  template <class U, class... Args>
  void construct(U* p, Args&&... args) {
    ::new (static_cast<void*>(p)) U(std::forward<Args>(args)...);
  }
  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

using Spectrum = std::vector<Complex, FftwAllocator<Complex>>;

struct FftPlans;

/// Real-to-complex transforms on one grid shape. Spectral layout is
/// nx * ny * (nz/2 + 1), z fastest. Plans are shared per shape; instances are
/// cheap to construct and safe to use from several threads.
class Spectral {
 public:
  explicit Spectral(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::size_t spectrum_size() const { return spectrum_size_; }
  int half_nz() const { return grid_.n()[2] / 2 + 1; }

  Spectrum forward(const Array& f) const;
  /// Normalized inverse; consumes the spectrum (c2r overwrites its input).
  Array inverse(Spectrum s) const;

  /// Signed mode number for spectral index idx along axis.
  int mode(int axis, int idx) const;
  double wavenumber(int axis, int idx) const;

  /// Multiply by i k_axis; the Nyquist plane of that axis is zeroed so the
  /// derivative stays real.
  void differentiate(Spectrum& s, int axis) const;
  /// Zero every mode outside the dealiasing cube.
  void truncate(Spectrum& s) const;
  bool retained(int i, int j, int k) const;

  // Composite operations with a single transform pair per input.
  Array derivative(const Array& f, int axis, bool dealias = false) const;
  std::array<Array, 3> gradient(const Array& f, bool dealias = false) const;
  std::array<Array, 3> curl(const std::array<Array, 3>& v, bool dealias = false) const;
  Array divergence(const std::array<Array, 3>& v, bool dealias = false) const;
  Array dealiased(const Array& f) const;
  /// Zero-mean solution of lap(x) = f; the mean and Nyquist modes of f are dropped.
  Array inverse_laplacian(const Array& f) const;

  /// All 8 mixed first derivatives, mask bit a set = d/dx_a applied.
  std::array<Array, 8> hermite_derivatives(const Array& f) const;

 private:
  Grid grid_;
  std::size_t spectrum_size_;
  std::array<std::vector<double>, 3> k_;     // wavenumbers, 0 on the Nyquist index
  std::array<std::vector<char>, 3> keep_;    // inside the dealiasing cube
  std::shared_ptr<const FftPlans> plans_;
};

/// Number of worker threads for grid loops and transforms (LIEDRAG_THREADS).
void set_thread_count(int n);
int thread_count();

/// Random real field whose modes satisfy |m_a| <= max_mode on every axis,
/// scaled to unit RMS. Deterministic for a given seed.
ScalarField random_band_limited(const Grid& g, int max_mode, std::uint64_t seed);

}  // namespace liedrag
