// The global filter layer: a learnable complex half-spectrum multiplied
// elementwise against the 2D spectrum of the token grid, with the inverse
// transform returning to the spatial domain. Includes the exact backward
// pass, the brute-force circular-convolution oracle that certifies the layer,
// and filter interpolation across token-grid resolutions.
#pragma once

#include <cmath>
#include <utility>

#include "gfnet/fourier.hpp"
#include "gfnet/rng.hpp"
#include "gfnet/tensor.hpp"

namespace gfnet {

struct GlobalFilter {
  int64_t height = 0;
  int64_t full_width = 0;
  ComplexTensor weights;  // H x half_width x D, learnable re/im planes

  int64_t half_width() const { return half_spectrum_width(full_width); }
  int64_t channels() const { return weights.shape.size() == 3 ? weights.dim(2) : 0; }
  // Real scalars held by the filter (re and im planes).
  int64_t param_count() const { return 2 * height * half_width() * channels(); }
};

inline GlobalFilter make_global_filter(int64_t h, int64_t w, int64_t d) {
  GlobalFilter f;
  f.height = h;
  f.full_width = w;
  f.weights = ComplexTensor({h, half_spectrum_width(w), d});
  return f;
}

inline void init_global_filter(GlobalFilter& f, Rng& rng, double sigma = 0.02) {
  for (auto& v : f.weights.re) v = sigma * rng.normal();
  for (auto& v : f.weights.im) v = sigma * rng.normal();
}

// Gradient of a scalar loss with respect to the filter: the re/im planes of
// d_weights are the gradients of the corresponding real parameters.
struct FilterGradient {
  ComplexTensor d_weights;
};

struct GlobalFilterCache {
  SpectrumHalf input_spectrum;  // rfft_2d of the forward input
};

inline void require_filter_match(const Tensor& x, const GlobalFilter& f, const char* what) {
  if (x.shape.size() != 3)
    throw std::invalid_argument(std::string(what) + ": expected H x W x D input");
  if (x.dim(0) != f.height || x.dim(1) != f.full_width || x.dim(2) != f.channels())
    throw std::invalid_argument(std::string(what) + ": input " + shape_str(x.shape) +
                                " does not match filter " + std::to_string(f.height) + "x" +
                                std::to_string(f.full_width) + "x" + std::to_string(f.channels()));
}

// y = irfft_2d(weights (*) rfft_2d(x)). Real in, real out, shape preserved.
inline Tensor global_filter_forward(const Tensor& x, const GlobalFilter& f,
                                    GlobalFilterCache* cache = nullptr) {
  require_filter_match(x, f, "global_filter_forward");
  SpectrumHalf spectrum = rfft_2d(x);
  SpectrumHalf modulated;
  modulated.height = spectrum.height;
  modulated.full_width = spectrum.full_width;
  modulated.values = elementwise_mul_complex(f.weights, spectrum.values);
  Tensor y = irfft_2d(modulated);
  if (cache) cache->input_spectrum = std::move(spectrum);
  return y;
}

// Backward pass. The layer is linear in x and bilinear in (x, weights); the
// adjoint is taken through the chain
//   y = Re(ifft2(expand(sym(weights (*) X)))),  X = rfft2(x),
// where expand is the Hermitian extension of the stored half and sym the
// self-paired-column projection applied inside irfft_2d.
inline std::pair<Tensor, FilterGradient> global_filter_backward(const Tensor& dy,
                                                                const GlobalFilterCache& cache,
                                                                const GlobalFilter& f) {
  require_filter_match(dy, f, "global_filter_backward");
  const SpectrumHalf& X = cache.input_spectrum;
  if (X.height != f.height || X.full_width != f.full_width || X.values.shape != f.weights.shape)
    throw std::logic_error("global_filter_backward: cache does not match filter (stale or mismatched forward)");
  const int64_t h = f.height, w = f.full_width, hw = f.half_width(), d = f.channels();

  FilterGradient dk;
  dk.d_weights = ComplexTensor({h, hw, d});
  Tensor dx({h, w, d});

  std::vector<cd> plane(static_cast<size_t>(h * w));
  ComplexTensor dmod({h, hw, 1});  // adjoint w.r.t. the modulated half, one channel at a time
  for (int64_t c = 0; c < d; ++c) {
    // Adjoint of Re(ifft2(.)): unnormalized-forward transform of dy / (H*W).
    for (int64_t u = 0; u < h; ++u)
      for (int64_t v = 0; v < w; ++v) plane[static_cast<size_t>(u * w + v)] = cd(dy.at(u, v, c), 0.0);
    detail::fft2_plane(plane.data(), h, w, /*inverse=*/false);
    const double inv_hw = 1.0 / static_cast<double>(h * w);

    // Adjoint of the Hermitian extension: stored bins also collect the
    // conjugated gradient of their mirrored copies.
    for (int64_t u = 0; u < h; ++u) {
      for (int64_t v = 0; v < hw; ++v) {
        cd g = plane[static_cast<size_t>(u * w + v)];
        const bool self_paired = (v == 0) || (w % 2 == 0 && v == w / 2);
        if (!self_paired) {
          const int64_t up = (h - u) % h;
          const int64_t vp = w - v;
          g += std::conj(plane[static_cast<size_t>(up * w + vp)]);
        }
        dmod.set(u * hw + v, g * inv_hw);
      }
    }
    // Adjoint of the self-paired-column projection (it is self-adjoint).
    detail::symmetrize_self_paired_columns(dmod, h, w);

    // Product rule on weights (*) X, with re/im treated as independent reals.
    for (int64_t u = 0; u < h; ++u) {
      for (int64_t v = 0; v < hw; ++v) {
        const int64_t idx = (u * hw + v) * d + c;
        const cd g = dmod.get(u * hw + v);
        dk.d_weights.set(idx, g * std::conj(X.values.get(idx)));
        plane[static_cast<size_t>(u * w + v)] = g * std::conj(f.weights.get(idx));
      }
      for (int64_t v = hw; v < w; ++v) plane[static_cast<size_t>(u * w + v)] = cd(0.0, 0.0);
    }
    // Adjoint of rfft2 on real input: zero-pad the half grid and apply the
    // unnormalized inverse transform; the 1/(H*W) of ifft2 cancels the H*W of
    // the adjoint scaling.
    detail::fft2_plane(plane.data(), h, w, /*inverse=*/true);
    for (int64_t u = 0; u < h; ++u)
      for (int64_t v = 0; v < w; ++v) dx.at(u, v, c) = plane[static_cast<size_t>(u * w + v)].real();
  }
  return {std::move(dx), std::move(dk)};
}

// Depthwise circular convolution by direct summation; O(L^2) per channel and
// used only as the ground-truth spatial-domain route.
inline Tensor circular_conv_oracle(const Tensor& x, const Tensor& kernel) {
  require_same_shape(x.shape, kernel.shape, "circular_conv_oracle");
  if (x.shape.size() != 3) throw std::invalid_argument("circular_conv_oracle: expected H x W x D");
  const int64_t h = x.dim(0), w = x.dim(1), d = x.dim(2);
  Tensor y({h, w, d});
  for (int64_t c = 0; c < d; ++c)
    for (int64_t m = 0; m < h; ++m)
      for (int64_t n = 0; n < w; ++n) {
        double acc = 0.0;
        for (int64_t p = 0; p < h; ++p)
          for (int64_t q = 0; q < w; ++q)
            acc += kernel.at(p, q, c) * x.at(((m - p) % h + h) % h, ((n - q) % w + w) % w, c);
        y.at(m, n, c) = acc;
      }
  return y;
}

// The real spatial kernel equivalent to the filter: feeding it to
// circular_conv_oracle reproduces the layer.
inline Tensor spatial_filter_of(const GlobalFilter& f) {
  SpectrumHalf s;
  s.height = f.height;
  s.full_width = f.full_width;
  s.values = f.weights;
  return irfft_2d(s);
}

// Resample the filter onto the half-spectrum grid of a new token resolution.
// Bilinear on the re/im planes over the normalized-frequency grid: periodic
// wrap along the height axis (omega_u is 2*pi-periodic), clamp at the ends of
// the stored width axis.
inline GlobalFilter interpolate_filter(const GlobalFilter& f, int64_t new_h, int64_t new_w) {
  if (new_h < 1 || new_w < 1) throw std::invalid_argument("interpolate_filter: target dims must be >= 1");
  const int64_t h = f.height, hw = f.half_width(), d = f.channels();
  const int64_t new_hw = half_spectrum_width(new_w);
  GlobalFilter out = make_global_filter(new_h, new_w, d);
  for (int64_t u = 0; u < new_h; ++u) {
    const double su = static_cast<double>(u) * static_cast<double>(h) / static_cast<double>(new_h);
    const int64_t i0 = static_cast<int64_t>(std::floor(su));
    const int64_t i1 = (i0 + 1) % h;
    const double fu = su - static_cast<double>(i0);
    for (int64_t v = 0; v < new_hw; ++v) {
      double sv = static_cast<double>(v) * static_cast<double>(f.full_width) / static_cast<double>(new_w);
      sv = std::min(sv, static_cast<double>(hw - 1));
      int64_t j0 = std::min<int64_t>(static_cast<int64_t>(std::floor(sv)), std::max<int64_t>(hw - 2, 0));
      const int64_t j1 = std::min<int64_t>(j0 + 1, hw - 1);
      const double fv = sv - static_cast<double>(j0);
      for (int64_t c = 0; c < d; ++c) {
        const auto at = [&](int64_t uu, int64_t vv) { return f.weights.get((uu * hw + vv) * d + c); };
        const cd val = (1.0 - fu) * ((1.0 - fv) * at(i0, j0) + fv * at(i0, j1)) +
                       fu * ((1.0 - fv) * at(i1, j0) + fv * at(i1, j1));
        out.weights.set((u * new_hw + v) * d + c, val);
      }
    }
  }
  return out;
}

}  // namespace gfnet
