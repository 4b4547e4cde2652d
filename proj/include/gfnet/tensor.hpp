// Dense real/complex tensors (double precision, row-major, channel innermost)
// and the elementwise, reduction and matrix kernels the rest of the library
// builds on.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gfnet {

using Shape = std::vector<int64_t>;

inline int64_t shape_numel(const Shape& shape) {
  int64_t n = 1;
  for (int64_t d : shape) {
    if (d <= 0) throw std::invalid_argument("tensor dims must be positive");
    n *= d;
  }
  return n;
}

inline std::string shape_str(const Shape& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

struct Tensor {
  Shape shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(Shape s) : shape(std::move(s)), data(static_cast<size_t>(shape_numel(shape)), 0.0) {}
  Tensor(Shape s, std::vector<double> d) : shape(std::move(s)), data(std::move(d)) {
    if (static_cast<int64_t>(data.size()) != shape_numel(shape))
      throw std::invalid_argument("tensor data length does not match shape");
  }

  int64_t numel() const { return static_cast<int64_t>(data.size()); }
  int64_t rank() const { return static_cast<int64_t>(shape.size()); }
  int64_t dim(int i) const { return shape[static_cast<size_t>(i)]; }

  double& operator[](int64_t i) { return data[static_cast<size_t>(i)]; }
  double operator[](int64_t i) const { return data[static_cast<size_t>(i)]; }

  double& at(int64_t i, int64_t j) { return data[static_cast<size_t>(i * shape[1] + j)]; }
  double at(int64_t i, int64_t j) const { return data[static_cast<size_t>(i * shape[1] + j)]; }
  double& at(int64_t i, int64_t j, int64_t k) {
    return data[static_cast<size_t>((i * shape[1] + j) * shape[2] + k)];
  }
  double at(int64_t i, int64_t j, int64_t k) const {
    return data[static_cast<size_t>((i * shape[1] + j) * shape[2] + k)];
  }
};

struct ComplexTensor {
  Shape shape;
  std::vector<double> re, im;

  ComplexTensor() = default;
  explicit ComplexTensor(Shape s)
      : shape(std::move(s)),
        re(static_cast<size_t>(shape_numel(shape)), 0.0),
        im(static_cast<size_t>(shape_numel(shape)), 0.0) {}

  int64_t numel() const { return static_cast<int64_t>(re.size()); }
  int64_t dim(int i) const { return shape[static_cast<size_t>(i)]; }

  std::complex<double> get(int64_t i) const {
    return {re[static_cast<size_t>(i)], im[static_cast<size_t>(i)]};
  }
  void set(int64_t i, std::complex<double> v) {
    re[static_cast<size_t>(i)] = v.real();
    im[static_cast<size_t>(i)] = v.imag();
  }
};

inline bool same_shape(const Shape& a, const Shape& b) { return a == b; }

inline void require_same_shape(const Shape& a, const Shape& b, const char* what) {
  if (!same_shape(a, b))
    throw std::invalid_argument(std::string(what) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
}

// Hadamard product of complex tensors.
inline ComplexTensor elementwise_mul_complex(const ComplexTensor& a, const ComplexTensor& b) {
  require_same_shape(a.shape, b.shape, "elementwise_mul_complex");
  ComplexTensor out(a.shape);
  const int64_t n = a.numel();
  for (int64_t i = 0; i < n; ++i) {
    const double ar = a.re[i], ai = a.im[i];
    const double br = b.re[i], bi = b.im[i];
    out.re[i] = ar * br - ai * bi;
    out.im[i] = ar * bi + ai * br;
  }
  return out;
}

// C[M x N] = A[M x K] * B[K x N]. k-blocked i-k-j loop so the inner loop
// streams contiguous rows of B and C.
inline void matmul_into(const double* a, const double* b, double* c, int64_t m, int64_t k, int64_t n) {
  std::fill(c, c + m * n, 0.0);
  constexpr int64_t kBlock = 256;
  for (int64_t k0 = 0; k0 < k; k0 += kBlock) {
    const int64_t k1 = std::min(k, k0 + kBlock);
    for (int64_t i = 0; i < m; ++i) {
      double* crow = c + i * n;
      const double* arow = a + i * k;
      for (int64_t kk = k0; kk < k1; ++kk) {
        const double av = arow[kk];
        const double* brow = b + kk * n;
        for (int64_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
}

// C[M x N] = A[M x K] * B[N x K]^T.
inline void matmul_nt_into(const double* a, const double* b, double* c, int64_t m, int64_t k, int64_t n) {
  for (int64_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    double* crow = c + i * n;
    for (int64_t j = 0; j < n; ++j) {
      const double* brow = b + j * k;
      double acc = 0.0;
      for (int64_t kk = 0; kk < k; ++kk) acc += arow[kk] * brow[kk];
      crow[j] = acc;
    }
  }
}

// C[M x N] = A[K x M]^T * B[K x N], accumulated row by row of A and B.
inline void matmul_tn_into(const double* a, const double* b, double* c, int64_t m, int64_t k, int64_t n) {
  std::fill(c, c + m * n, 0.0);
  for (int64_t kk = 0; kk < k; ++kk) {
    const double* arow = a + kk * m;
    const double* brow = b + kk * n;
    for (int64_t i = 0; i < m; ++i) {
      const double av = arow[i];
      double* crow = c + i * n;
      for (int64_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

inline Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2)
    throw std::invalid_argument("matmul: operands must be rank-2");
  if (a.shape[1] != b.shape[0])
    throw std::invalid_argument("matmul: inner dims disagree " + shape_str(a.shape) + " vs " + shape_str(b.shape));
  Tensor c({a.shape[0], b.shape[1]});
  matmul_into(a.data.data(), b.data.data(), c.data.data(), a.shape[0], a.shape[1], b.shape[1]);
  return c;
}

// GELU, tanh approximation: 0.5*x*(1 + tanh(sqrt(2/pi)*(x + 0.044715*x^3))).
inline double gelu_scalar(double x) {
  constexpr double c = 0.79788456080286535588;  // sqrt(2/pi)
  constexpr double a = 0.044715;
  return 0.5 * x * (1.0 + std::tanh(c * (x + a * x * x * x)));
}

inline double gelu_grad_scalar(double x) {
  constexpr double c = 0.79788456080286535588;
  constexpr double a = 0.044715;
  const double u = c * (x + a * x * x * x);
  const double t = std::tanh(u);
  const double sech2 = 1.0 - t * t;
  return 0.5 * (1.0 + t) + 0.5 * x * sech2 * c * (1.0 + 3.0 * a * x * x);
}

inline Tensor gelu(const Tensor& x) {
  Tensor y(x.shape);
  for (int64_t i = 0; i < x.numel(); ++i) y[i] = gelu_scalar(x[i]);
  return y;
}

// Softmax over the innermost axis, log-sum-exp stabilized.
inline Tensor softmax_lastdim(const Tensor& x) {
  if (x.rank() < 1) throw std::invalid_argument("softmax_lastdim: rank must be >= 1");
  const int64_t n = x.shape.back();
  const int64_t rows = x.numel() / n;
  Tensor y(x.shape);
  for (int64_t r = 0; r < rows; ++r) {
    const double* xr = x.data.data() + r * n;
    double* yr = y.data.data() + r * n;
    double mx = xr[0];
    for (int64_t i = 1; i < n; ++i) mx = std::max(mx, xr[i]);
    double sum = 0.0;
    for (int64_t i = 0; i < n; ++i) {
      yr[i] = std::exp(xr[i] - mx);
      sum += yr[i];
    }
    for (int64_t i = 0; i < n; ++i) yr[i] /= sum;
  }
  return y;
}

// Per-slice mean and (biased) variance along `axis`; outputs drop that axis.
inline std::pair<Tensor, Tensor> layer_norm_stats(const Tensor& x, int axis) {
  if (axis < 0 || axis >= x.rank()) throw std::invalid_argument("layer_norm_stats: axis out of range");
  int64_t outer = 1, inner = 1;
  const int64_t n = x.shape[axis];
  for (int i = 0; i < axis; ++i) outer *= x.shape[i];
  for (int i = axis + 1; i < x.rank(); ++i) inner *= x.shape[i];
  Shape out_shape;
  for (int i = 0; i < x.rank(); ++i)
    if (i != axis) out_shape.push_back(x.shape[i]);
  if (out_shape.empty()) out_shape.push_back(1);
  Tensor mean(out_shape), var(out_shape);
  for (int64_t o = 0; o < outer; ++o) {
    for (int64_t in = 0; in < inner; ++in) {
      double s = 0.0;
      for (int64_t k = 0; k < n; ++k) s += x[(o * n + k) * inner + in];
      const double mu = s / static_cast<double>(n);
      double sq = 0.0;
      for (int64_t k = 0; k < n; ++k) {
        const double d = x[(o * n + k) * inner + in] - mu;
        sq += d * d;
      }
      mean[o * inner + in] = mu;
      var[o * inner + in] = sq / static_cast<double>(n);
    }
  }
  return {std::move(mean), std::move(var)};
}

inline bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline bool all_finite(const Tensor& t) { return all_finite(t.data); }
inline bool all_finite(const ComplexTensor& t) { return all_finite(t.re) && all_finite(t.im); }

}  // namespace gfnet
