// Shared helpers for the unit suites: random tensor generators and
// independent brute-force oracles kept deliberately separate from the
// library's fast paths.
#pragma once

#include <complex>
#include <random>
#include <vector>

#include "gfnet/fourier.hpp"
#include "gfnet/tensor.hpp"

namespace testutil {

using gfnet::ComplexTensor;
using gfnet::Shape;
using gfnet::Tensor;
using cd = std::complex<double>;

inline Tensor random_tensor(const Shape& shape, std::mt19937& gen, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Tensor t(shape);
  for (auto& v : t.data) v = dist(gen);
  return t;
}

inline ComplexTensor random_complex(const Shape& shape, std::mt19937& gen, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  ComplexTensor t(shape);
  for (auto& v : t.re) v = dist(gen);
  for (auto& v : t.im) v = dist(gen);
  return t;
}

inline double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b) {
  double m = 0.0;
  for (int64_t i = 0; i < a.numel(); ++i) m = std::max(m, std::abs(a.get(i) - b.get(i)));
  return m;
}

inline double max_abs_diff(const Tensor& a, const Tensor& b) {
  double m = 0.0;
  for (int64_t i = 0; i < a.numel(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const Tensor& a) {
  double m = 0.0;
  for (double v : a.data) m = std::max(m, std::abs(v));
  return m;
}

// Triple-loop matrix product, the reference for gfnet::matmul.
inline Tensor matmul_naive(const Tensor& a, const Tensor& b) {
  const int64_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  Tensor c({m, n});
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int64_t p = 0; p < k; ++p) acc += a.at(i, p) * b.at(p, j);
      c.at(i, j) = acc;
    }
  return c;
}

// Direct double-sum 2D DFT (Appendix-style definition), the reference for
// gfnet::fft_2d.
inline ComplexTensor dft_2d_naive(const ComplexTensor& x) {
  const int64_t h = x.dim(0), w = x.dim(1);
  ComplexTensor out({h, w});
  for (int64_t u = 0; u < h; ++u)
    for (int64_t v = 0; v < w; ++v) {
      cd acc = 0.0;
      for (int64_t m = 0; m < h; ++m)
        for (int64_t n = 0; n < w; ++n) {
          const double ang = -gfnet::kTwoPi * (static_cast<double>(u * m) / static_cast<double>(h) +
                                               static_cast<double>(v * n) / static_cast<double>(w));
          acc += x.get(m * w + n) * std::polar(1.0, ang);
        }
      out.set(u * w + v, acc);
    }
  return out;
}

// 1D circular convolution by direct summation.
inline std::vector<cd> circ_conv_1d(const std::vector<cd>& x, const std::vector<cd>& h) {
  const int64_t n = static_cast<int64_t>(x.size());
  std::vector<cd> y(static_cast<size_t>(n), cd(0.0, 0.0));
  for (int64_t i = 0; i < n; ++i)
    for (int64_t m = 0; m < n; ++m) y[static_cast<size_t>(i)] += h[static_cast<size_t>(m)] * x[static_cast<size_t>(((i - m) % n + n) % n)];
  return y;
}

// Central-difference gradient of a scalar loss with respect to a flat
// parameter vector (the vector is restored on return).
template <class LossFn>
std::vector<double> fd_grad(std::vector<double>& params, LossFn loss, double eps = 1e-5) {
  std::vector<double> grad(params.size());
  for (size_t i = 0; i < params.size(); ++i) {
    const double keep = params[i];
    params[i] = keep + eps;
    const double up = loss();
    params[i] = keep - eps;
    const double down = loss();
    params[i] = keep;
    grad[i] = (up - down) / (2.0 * eps);
  }
  return grad;
}

// Worst per-coordinate relative error with a denominator floored at a small
// fraction of the largest gradient magnitude (keeps finite-difference noise
// on near-zero coordinates from dominating).
inline double grad_rel_err(const std::vector<double>& analytic, const std::vector<double>& numeric) {
  double gmax = 1e-12;
  for (size_t i = 0; i < analytic.size(); ++i)
    gmax = std::max({gmax, std::abs(analytic[i]), std::abs(numeric[i])});
  double worst = 0.0;
  for (size_t i = 0; i < analytic.size(); ++i) {
    const double denom = std::max({std::abs(analytic[i]), std::abs(numeric[i]), 1e-4 * gmax});
    worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / denom);
  }
  return worst;
}

}  // namespace testutil
