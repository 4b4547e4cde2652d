// Discrete Fourier transforms: naive O(N^2) reference transforms, fast
// O(N log N) transforms (radix-2 Cooley-Tukey, Bluestein chirp-z for other
// lengths), separable 2D transforms, and half-spectrum transforms for real
// input exploiting conjugate symmetry.
//
// Conventions: forward transforms are unnormalized, inverses carry 1/N
// (1/(H*W) in 2D). The half-spectrum keeps columns 0..W/2 of the full
// spectrum (half_width = floor(W/2) + 1).
#pragma once

#include <algorithm>
#include <complex>
#include <memory>
#include <unordered_map>
#include <vector>

#include "gfnet/tensor.hpp"

namespace gfnet {

using cd = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline int64_t half_spectrum_width(int64_t full_width) { return full_width / 2 + 1; }

// ---------------------------------------------------------------------------
// Naive 1D transforms (direct double loop). These are the ground-truth
// oracles every fast path is checked against.
// ---------------------------------------------------------------------------

inline ComplexTensor dft_1d_naive(const ComplexTensor& x) {
  const int64_t n = x.numel();
  ComplexTensor out({n});
  for (int64_t k = 0; k < n; ++k) {
    cd acc = 0.0;
    for (int64_t i = 0; i < n; ++i) {
      const double ang = -kTwoPi * static_cast<double>(k) * static_cast<double>(i) / static_cast<double>(n);
      acc += x.get(i) * std::polar(1.0, ang);
    }
    out.set(k, acc);
  }
  return out;
}

inline ComplexTensor idft_1d_naive(const ComplexTensor& X) {
  const int64_t n = X.numel();
  ComplexTensor out({n});
  for (int64_t i = 0; i < n; ++i) {
    cd acc = 0.0;
    for (int64_t k = 0; k < n; ++k) {
      const double ang = kTwoPi * static_cast<double>(k) * static_cast<double>(i) / static_cast<double>(n);
      acc += X.get(k) * std::polar(1.0, ang);
    }
    out.set(i, acc / static_cast<double>(n));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fast 1D transform. Plans (twiddles, bit-reversal tables, Bluestein chirp
// kernels) are cached per length in a thread-local table, so transforms stay
// pure functions of their input.
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_pow2(int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

inline int64_t next_pow2(int64_t n) {
  int64_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

struct FftPlan {
  int64_t n = 0;
  // Power-of-two machinery (used directly, or by Bluestein at length m).
  std::vector<cd> twiddle;      // e^{-2*pi*i*k/n} for k < n/2
  std::vector<int32_t> bitrev;  // index permutation
  // Bluestein extras (empty when n is a power of two).
  int64_t m = 0;                     // convolution length, power of two >= 2n-1
  std::vector<cd> chirp;             // b[k] = e^{+i*pi*k^2/n}
  std::vector<cd> kernel_spectrum;   // FFT_m of the circular chirp kernel
};

// Radix-2 DIT, in place, length must be plan.n (a power of two).
// inverse=true conjugates the twiddles; no normalization either way.
inline void fft_pow2_inplace(cd* x, const FftPlan& plan, bool inverse) {
  const int64_t n = plan.n;
  for (int64_t i = 0; i < n; ++i) {
    const int64_t j = plan.bitrev[static_cast<size_t>(i)];
    if (j > i) std::swap(x[i], x[j]);
  }
  for (int64_t len = 2; len <= n; len <<= 1) {
    const int64_t half = len >> 1;
    const int64_t step = n / len;
    for (int64_t base = 0; base < n; base += len) {
      for (int64_t k = 0; k < half; ++k) {
        cd w = plan.twiddle[static_cast<size_t>(k * step)];
        if (inverse) w = std::conj(w);
        const cd u = x[base + k];
        const cd v = x[base + k + half] * w;
        x[base + k] = u + v;
        x[base + k + half] = u - v;
      }
    }
  }
}

inline std::unique_ptr<FftPlan> make_pow2_plan(int64_t n) {
  auto plan = std::make_unique<FftPlan>();
  plan->n = n;
  plan->twiddle.resize(static_cast<size_t>(std::max<int64_t>(n / 2, 1)));
  for (int64_t k = 0; k < n / 2; ++k)
    plan->twiddle[static_cast<size_t>(k)] =
        std::polar(1.0, -kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  plan->bitrev.resize(static_cast<size_t>(n));
  int bits = 0;
  while ((int64_t{1} << bits) < n) ++bits;
  for (int64_t i = 0; i < n; ++i) {
    int64_t r = 0;
    for (int b = 0; b < bits; ++b)
      if (i & (int64_t{1} << b)) r |= int64_t{1} << (bits - 1 - b);
    plan->bitrev[static_cast<size_t>(i)] = static_cast<int32_t>(r);
  }
  return plan;
}

inline const FftPlan& plan_for(int64_t n);

// Bluestein chirp-z: a length-n DFT as a circular convolution of length m,
// computed with the power-of-two core. chirp angles use k^2 mod 2n to keep
// the argument small.
inline std::unique_ptr<FftPlan> make_bluestein_plan(int64_t n) {
  auto plan = std::make_unique<FftPlan>();
  plan->n = n;
  plan->m = next_pow2(2 * n - 1);
  plan->chirp.resize(static_cast<size_t>(n));
  for (int64_t k = 0; k < n; ++k) {
    const int64_t k2 = (k * k) % (2 * n);
    plan->chirp[static_cast<size_t>(k)] =
        std::polar(1.0, 3.14159265358979323846264338327950288 * static_cast<double>(k2) / static_cast<double>(n));
  }
  std::vector<cd> kernel(static_cast<size_t>(plan->m), cd(0.0, 0.0));
  kernel[0] = plan->chirp[0];
  for (int64_t k = 1; k < n; ++k) {
    kernel[static_cast<size_t>(k)] = plan->chirp[static_cast<size_t>(k)];
    kernel[static_cast<size_t>(plan->m - k)] = plan->chirp[static_cast<size_t>(k)];
  }
  const FftPlan& inner = plan_for(plan->m);
  fft_pow2_inplace(kernel.data(), inner, /*inverse=*/false);
  plan->kernel_spectrum = std::move(kernel);
  return plan;
}

inline const FftPlan& plan_for(int64_t n) {
  thread_local std::unordered_map<int64_t, std::unique_ptr<FftPlan>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto plan = is_pow2(n) ? make_pow2_plan(n) : make_bluestein_plan(n);
  const FftPlan& ref = *plan;
  cache.emplace(n, std::move(plan));
  return ref;
}

inline void bluestein_inplace(cd* x, const FftPlan& plan) {
  const int64_t n = plan.n;
  const int64_t m = plan.m;
  const FftPlan& inner = plan_for(m);
  std::vector<cd> a(static_cast<size_t>(m), cd(0.0, 0.0));
  for (int64_t k = 0; k < n; ++k) a[static_cast<size_t>(k)] = x[k] * std::conj(plan.chirp[static_cast<size_t>(k)]);
  fft_pow2_inplace(a.data(), inner, false);
  for (int64_t k = 0; k < m; ++k) a[static_cast<size_t>(k)] *= plan.kernel_spectrum[static_cast<size_t>(k)];
  // Unnormalized inverse via conjugation, then scale by 1/m.
  for (auto& v : a) v = std::conj(v);
  fft_pow2_inplace(a.data(), inner, false);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (int64_t k = 0; k < n; ++k)
    x[k] = std::conj(a[static_cast<size_t>(k)]) * inv_m * std::conj(plan.chirp[static_cast<size_t>(k)]);
}

// Unnormalized transform of length n at x; inverse flips the kernel sign.
inline void fft_raw(cd* x, int64_t n, bool inverse) {
  if (n == 1) return;
  const FftPlan& plan = plan_for(n);
  if (is_pow2(n)) {
    fft_pow2_inplace(x, plan, inverse);
    return;
  }
  if (!inverse) {
    bluestein_inplace(x, plan);
    return;
  }
  for (int64_t i = 0; i < n; ++i) x[i] = std::conj(x[i]);
  bluestein_inplace(x, plan);
  for (int64_t i = 0; i < n; ++i) x[i] = std::conj(x[i]);
}

}  // namespace detail

inline ComplexTensor fft_1d(const ComplexTensor& x) {
  const int64_t n = x.numel();
  std::vector<cd> buf(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) buf[static_cast<size_t>(i)] = x.get(i);
  detail::fft_raw(buf.data(), n, false);
  ComplexTensor out({n});
  for (int64_t i = 0; i < n; ++i) out.set(i, buf[static_cast<size_t>(i)]);
  return out;
}

inline ComplexTensor ifft_1d(const ComplexTensor& X) {
  const int64_t n = X.numel();
  std::vector<cd> buf(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) buf[static_cast<size_t>(i)] = X.get(i);
  detail::fft_raw(buf.data(), n, true);
  ComplexTensor out({n});
  const double inv = 1.0 / static_cast<double>(n);
  for (int64_t i = 0; i < n; ++i) out.set(i, buf[static_cast<size_t>(i)] * inv);
  return out;
}

// ---------------------------------------------------------------------------
// 2D transforms on a contiguous H x W plane: 1D transforms along rows, then
// along columns.
// ---------------------------------------------------------------------------

namespace detail {

inline void fft2_plane(cd* plane, int64_t h, int64_t w, bool inverse) {
  for (int64_t r = 0; r < h; ++r) fft_raw(plane + r * w, w, inverse);
  std::vector<cd> col(static_cast<size_t>(h));
  for (int64_t c = 0; c < w; ++c) {
    for (int64_t r = 0; r < h; ++r) col[static_cast<size_t>(r)] = plane[r * w + c];
    fft_raw(col.data(), h, inverse);
    for (int64_t r = 0; r < h; ++r) plane[r * w + c] = col[static_cast<size_t>(r)];
  }
}

}  // namespace detail

inline ComplexTensor fft_2d(const ComplexTensor& x) {
  if (x.shape.size() != 2) throw std::invalid_argument("fft_2d: expected H x W tensor");
  const int64_t h = x.dim(0), w = x.dim(1);
  std::vector<cd> plane(static_cast<size_t>(h * w));
  for (int64_t i = 0; i < h * w; ++i) plane[static_cast<size_t>(i)] = x.get(i);
  detail::fft2_plane(plane.data(), h, w, false);
  ComplexTensor out({h, w});
  for (int64_t i = 0; i < h * w; ++i) out.set(i, plane[static_cast<size_t>(i)]);
  return out;
}

inline ComplexTensor ifft_2d(const ComplexTensor& X) {
  if (X.shape.size() != 2) throw std::invalid_argument("ifft_2d: expected H x W tensor");
  const int64_t h = X.dim(0), w = X.dim(1);
  std::vector<cd> plane(static_cast<size_t>(h * w));
  for (int64_t i = 0; i < h * w; ++i) plane[static_cast<size_t>(i)] = X.get(i);
  detail::fft2_plane(plane.data(), h, w, true);
  ComplexTensor out({h, w});
  const double inv = 1.0 / static_cast<double>(h * w);
  for (int64_t i = 0; i < h * w; ++i) out.set(i, plane[static_cast<size_t>(i)] * inv);
  return out;
}

// ---------------------------------------------------------------------------
// Real-input 2D transforms over H x W x D tensors, stored as the half
// spectrum H x half_width x D.
// ---------------------------------------------------------------------------

struct SpectrumHalf {
  int64_t height = 0;
  int64_t full_width = 0;
  ComplexTensor values;  // H x half_width x D

  int64_t half_width() const { return half_spectrum_width(full_width); }
  int64_t channels() const { return values.shape.size() == 3 ? values.dim(2) : 0; }
};

namespace detail {

// Hermitian projection of the self-paired columns (v = 0 and, for even W,
// v = W/2): bins (u, v) and ((H-u) mod H, v) are averaged against each
// other's conjugate. Idempotent, linear, and self-adjoint as a map on the
// stacked re/im planes.
inline void symmetrize_self_paired_columns(ComplexTensor& half, int64_t h, int64_t full_w) {
  const int64_t hw = half.dim(1);
  const int64_t d = half.dim(2);
  std::vector<int64_t> cols = {0};
  if (full_w % 2 == 0 && full_w / 2 < hw && full_w / 2 != 0) cols.push_back(full_w / 2);
  std::vector<cd> col(static_cast<size_t>(h));
  for (int64_t v : cols) {
    for (int64_t c = 0; c < d; ++c) {
      for (int64_t u = 0; u < h; ++u) col[static_cast<size_t>(u)] = half.get((u * hw + v) * d + c);
      for (int64_t u = 0; u < h; ++u) {
        const int64_t up = (h - u) % h;
        const cd s = 0.5 * (col[static_cast<size_t>(u)] + std::conj(col[static_cast<size_t>(up)]));
        half.set((u * hw + v) * d + c, s);
      }
    }
  }
}

}  // namespace detail

// Per channel: columns 0..half_width-1 of the full 2D DFT. The discarded
// half is recoverable as X[(H-u) mod H, (W-v) mod W] = conj(X[u, v]).
inline SpectrumHalf rfft_2d(const Tensor& x) {
  if (x.shape.size() != 3) throw std::invalid_argument("rfft_2d: expected H x W x D tensor");
  const int64_t h = x.dim(0), w = x.dim(1), d = x.dim(2);
  const int64_t hw = half_spectrum_width(w);
  SpectrumHalf out;
  out.height = h;
  out.full_width = w;
  out.values = ComplexTensor({h, hw, d});
  std::vector<cd> row(static_cast<size_t>(w));
  std::vector<cd> rows(static_cast<size_t>(h * hw));  // row-transformed, cropped
  std::vector<cd> col(static_cast<size_t>(h));
  for (int64_t c = 0; c < d; ++c) {
    for (int64_t r = 0; r < h; ++r) {
      for (int64_t j = 0; j < w; ++j) row[static_cast<size_t>(j)] = cd(x.at(r, j, c), 0.0);
      detail::fft_raw(row.data(), w, false);
      for (int64_t j = 0; j < hw; ++j) rows[static_cast<size_t>(r * hw + j)] = row[static_cast<size_t>(j)];
    }
    for (int64_t v = 0; v < hw; ++v) {
      for (int64_t r = 0; r < h; ++r) col[static_cast<size_t>(r)] = rows[static_cast<size_t>(r * hw + v)];
      detail::fft_raw(col.data(), h, false);
      for (int64_t u = 0; u < h; ++u) out.values.set((u * hw + v) * d + c, col[static_cast<size_t>(u)]);
    }
  }
  return out;
}

// Inverse of rfft_2d. The stored half is symmetrized (self-paired columns
// projected onto their Hermitian part) before inversion, so the output is
// real for arbitrary stored values; the imaginary residue is checked against
// 1e-9 and dropped.
inline Tensor irfft_2d(const SpectrumHalf& X) {
  const int64_t h = X.height, w = X.full_width;
  const int64_t hw = X.half_width();
  if (X.values.shape.size() != 3 || X.values.dim(0) != h || X.values.dim(1) != hw)
    throw std::invalid_argument("irfft_2d: half spectrum shape mismatch");
  const int64_t d = X.values.dim(2);
  ComplexTensor half = X.values;
  detail::symmetrize_self_paired_columns(half, h, w);
  Tensor out({h, w, d});
  std::vector<cd> plane(static_cast<size_t>(h * w));
  for (int64_t c = 0; c < d; ++c) {
    for (int64_t u = 0; u < h; ++u) {
      for (int64_t v = 0; v < w; ++v) {
        cd val;
        if (v < hw) {
          val = half.get((u * hw + v) * d + c);
        } else {
          const int64_t up = (h - u) % h;
          const int64_t vp = w - v;
          val = std::conj(half.get((up * hw + vp) * d + c));
        }
        plane[static_cast<size_t>(u * w + v)] = val;
      }
    }
    detail::fft2_plane(plane.data(), h, w, /*inverse=*/true);
    const double inv = 1.0 / static_cast<double>(h * w);
    double residue = 0.0;
    for (int64_t u = 0; u < h; ++u) {
      for (int64_t v = 0; v < w; ++v) {
        const cd val = plane[static_cast<size_t>(u * w + v)] * inv;
        residue = std::max(residue, std::abs(val.imag()));
        out.at(u, v, c) = val.real();
      }
    }
    if (residue >= 1e-9)
      throw std::logic_error("irfft_2d: imaginary residue " + std::to_string(residue) + " exceeds 1e-9");
  }
  return out;
}

}  // namespace gfnet
