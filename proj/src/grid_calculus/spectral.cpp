// SPDX-License-Identifier: Apache-2.0

#include "grid_calculus/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace liedrag {

template <class T>
T* FftwAllocator<T>::allocate(std::size_t n) {
  void* p = fftw_malloc(n * sizeof(T));
  if (!p) throw std::bad_alloc();
  return static_cast<T*>(p);
}

template <class T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
  fftw_free(p);
}

template struct FftwAllocator<Complex>;
template struct FftwAllocator<double>;

struct FftPlans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~FftPlans() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::atomic<int> g_threads{1};

std::shared_ptr<const FftPlans> plans_for(const Index3& n) {
  using Key = std::tuple<int, int, int, int>;
  static std::map<Key, std::shared_ptr<const FftPlans>> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  const int threads = g_threads.load();
  const Key key{n[0], n[1], n[2], threads};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

#ifdef LIEDRAG_FFTW_THREADS
  static const bool threads_ready = fftw_init_threads() != 0;
  if (threads_ready) fftw_plan_with_nthreads(threads);
#endif
  const std::size_t nreal = static_cast<std::size_t>(n[0]) * n[1] * n[2];
  const std::size_t ncomplex = static_cast<std::size_t>(n[0]) * n[1] * (n[2] / 2 + 1);
  double* real = fftw_alloc_real(nreal);
  fftw_complex* cplx = fftw_alloc_complex(ncomplex);
  auto plans = std::make_shared<FftPlans>();
  // ESTIMATE keeps the chosen algorithm, and hence every bit of output,
  // independent of timing measurements.
  const unsigned flags = FFTW_ESTIMATE;
  plans->r2c = fftw_plan_dft_r2c_3d(n[0], n[1], n[2], real, cplx, flags);
  plans->c2r = fftw_plan_dft_c2r_3d(n[0], n[1], n[2], cplx, real, flags);
  fftw_free(real);
  fftw_free(cplx);
  if (!plans->r2c || !plans->c2r) fail(ErrorKind::kInternal, "fftw: plan creation failed");
  cache.emplace(key, plans);
  return plans;
}

}  // namespace

void set_thread_count(int n) {
  if (n < 1) n = 1;
  g_threads.store(n);
#ifdef _OPENMP
  omp_set_num_threads(n);
#endif
}

int thread_count() { return g_threads.load(); }

Spectral::Spectral(const Grid& grid)
    : grid_(grid),
      spectrum_size_(static_cast<std::size_t>(grid.n()[0]) * grid.n()[1] * (grid.n()[2] / 2 + 1)),
      plans_(plans_for(grid.n())) {
  const Index3& n = grid.n();
  const int extent[3] = {n[0], n[1], n[2] / 2 + 1};
  for (int a = 0; a < 3; ++a) {
    k_[a].resize(extent[a]);
    keep_[a].resize(extent[a]);
    for (int idx = 0; idx < extent[a]; ++idx) {
      k_[a][idx] = idx == n[a] / 2 ? 0.0 : wavenumber(a, idx);
      keep_[a][idx] = std::abs(mode(a, idx)) <= grid.dealias_cutoff(a);
    }
  }
}

namespace {

// Aligned real staging buffer; Array storage carries no alignment guarantee.
std::vector<double, FftwAllocator<double>>& real_scratch(std::size_t n) {
  thread_local std::vector<double, FftwAllocator<double>> buf;
  if (buf.size() != n) buf.resize(n);
  return buf;
}

}  // namespace

Spectrum Spectral::forward(const Array& f) const {
  if (f.size() != grid_.size()) fail(ErrorKind::kInternal, "spectral: input size mismatch");
  auto& buf = real_scratch(f.size());
  std::copy(f.begin(), f.end(), buf.begin());
  Spectrum s(spectrum_size_);
  fftw_execute_dft_r2c(plans_->r2c, buf.data(), reinterpret_cast<fftw_complex*>(s.data()));
  return s;
}

Array Spectral::inverse(Spectrum s) const {
  auto& buf = real_scratch(grid_.size());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(s.data()), buf.data());
  const double norm = 1.0 / static_cast<double>(grid_.size());
  Array out(grid_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf[i] * norm;
  return out;
}

int Spectral::mode(int axis, int idx) const {
  const int n = grid_.n()[axis];
  return idx <= n / 2 ? idx : idx - n;
}

double Spectral::wavenumber(int axis, int idx) const {
  return Grid::kTwoPi / grid_.length()[axis] * mode(axis, idx);
}

void Spectral::differentiate(Spectrum& s, int axis) const {
  const Index3& n = grid_.n();
  const int hz = half_nz();
  const std::vector<double>& kv = k_[axis];
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n[0]; ++i) {
    for (int j = 0; j < n[1]; ++j) {
      const std::size_t row = (static_cast<std::size_t>(i) * n[1] + j) * hz;
      for (int k = 0; k < hz; ++k) {
        const double kk = axis == 0 ? kv[i] : (axis == 1 ? kv[j] : kv[k]);
        Complex& c = s[row + k];
        c = Complex(-kk * c.imag(), kk * c.real());
      }
    }
  }
}

bool Spectral::retained(int i, int j, int k) const {
  return keep_[0][i] && keep_[1][j] && keep_[2][k];
}

void Spectral::truncate(Spectrum& s) const {
  const Index3& n = grid_.n();
  const int hz = half_nz();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n[0]; ++i) {
    for (int j = 0; j < n[1]; ++j) {
      const std::size_t row = (static_cast<std::size_t>(i) * n[1] + j) * hz;
      if (!keep_[0][i] || !keep_[1][j]) {
        std::fill(s.begin() + row, s.begin() + row + hz, Complex(0.0));
        continue;
      }
      for (int k = 0; k < hz; ++k) {
        if (!keep_[2][k]) s[row + k] = 0.0;
      }
    }
  }
}

Array Spectral::derivative(const Array& f, int axis, bool dealias) const {
  Spectrum s = forward(f);
  differentiate(s, axis);
  if (dealias) truncate(s);
  return inverse(std::move(s));
}

std::array<Array, 3> Spectral::gradient(const Array& f, bool dealias) const {
  const Spectrum base = forward(f);
  std::array<Array, 3> out;
  for (int a = 0; a < 3; ++a) {
    Spectrum s = base;
    differentiate(s, a);
    if (dealias) truncate(s);
    out[a] = inverse(std::move(s));
  }
  return out;
}

std::array<Array, 3> Spectral::curl(const std::array<Array, 3>& v, bool dealias) const {
  std::array<Spectrum, 3> hat{forward(v[0]), forward(v[1]), forward(v[2])};
  std::array<Array, 3> out;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    // (curl v)_a = d_b v_c - d_c v_b
    Spectrum p = hat[c];
    differentiate(p, b);
    Spectrum q = hat[b];
    differentiate(q, c);
    for (std::size_t m = 0; m < p.size(); ++m) p[m] -= q[m];
    if (dealias) truncate(p);
    out[a] = inverse(std::move(p));
  }
  return out;
}

Array Spectral::divergence(const std::array<Array, 3>& v, bool dealias) const {
  Spectrum acc = forward(v[0]);
  differentiate(acc, 0);
  for (int a = 1; a < 3; ++a) {
    Spectrum s = forward(v[a]);
    differentiate(s, a);
    for (std::size_t m = 0; m < s.size(); ++m) acc[m] += s[m];
  }
  if (dealias) truncate(acc);
  return inverse(std::move(acc));
}

Array Spectral::dealiased(const Array& f) const {
  Spectrum s = forward(f);
  truncate(s);
  return inverse(std::move(s));
}

Array Spectral::inverse_laplacian(const Array& f) const {
  Spectrum s = forward(f);
  const Index3& n = grid_.n();
  const int hz = half_nz();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n[0]; ++i) {
    for (int j = 0; j < n[1]; ++j) {
      const std::size_t row = (static_cast<std::size_t>(i) * n[1] + j) * hz;
      for (int k = 0; k < hz; ++k) {
        const double k2 = k_[0][i] * k_[0][i] + k_[1][j] * k_[1][j] + k_[2][k] * k_[2][k];
        const bool nyquist = (n[0] % 2 == 0 && i == n[0] / 2) || (n[1] % 2 == 0 && j == n[1] / 2) ||
                             (n[2] % 2 == 0 && k == n[2] / 2);
        s[row + k] = (k2 > 0.0 && !nyquist) ? s[row + k] / -k2 : Complex(0.0);
      }
    }
  }
  return inverse(std::move(s));
}

std::array<Array, 8> Spectral::hermite_derivatives(const Array& f) const {
  const Spectrum base = forward(f);
  std::array<Array, 8> out;
  out[0] = f;
  for (int mask = 1; mask < 8; ++mask) {
    Spectrum s = base;
    for (int a = 0; a < 3; ++a) {
      if (mask & (1 << a)) differentiate(s, a);
    }
    out[mask] = inverse(std::move(s));
  }
  return out;
}

ScalarField random_band_limited(const Grid& g, int max_mode, std::uint64_t seed) {
  if (max_mode < 1 || 2 * max_mode >= std::min({g.n()[0], g.n()[1], g.n()[2]})) {
    fail(ErrorKind::kConfig, "random_band_limited: max_mode must be in [1, n/2)");
  }
  std::mt19937_64 rng(seed);
  Array noise(g.size());
  for (double& v : noise) v = 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
  const Spectral sp(g);
  Spectrum s = sp.forward(noise);
  const Index3& n = g.n();
  const int hz = sp.half_nz();
  for (int i = 0; i < n[0]; ++i) {
    for (int j = 0; j < n[1]; ++j) {
      for (int k = 0; k < hz; ++k) {
        const bool keep = std::abs(sp.mode(0, i)) <= max_mode && std::abs(sp.mode(1, j)) <= max_mode &&
                          std::abs(sp.mode(2, k)) <= max_mode;
        if (!keep) s[(static_cast<std::size_t>(i) * n[1] + j) * hz + k] = 0.0;
      }
    }
  }
  s[0] = 0.0;
  Array f = sp.inverse(std::move(s));
  const double r = rms(f);
  if (r > 0.0) {
    for (double& v : f) v /= r;
  }
  return ScalarField(g, std::move(f));
}

}  // namespace liedrag
