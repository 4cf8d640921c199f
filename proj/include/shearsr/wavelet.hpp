// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "shearsr/image.hpp"

namespace shearsr {

/// Single-level separable 2-D DWT output. Detail channels follow the usual
/// edge-response naming: `vertical` responds to vertical edges (high pass
/// along x), `horizontal` to horizontal edges (high pass along y).
struct WaveletCoefficients {
  Image approx;      // low/low
  Image vertical;    // channel 1
  Image horizontal;  // channel 2
  Image diagonal;    // channel 3
};

namespace detail {

// Daubechies-4 orthonormal pair.
inline const std::array<double, 4>& daub4_lo() {
  static const double s3 = std::sqrt(3.0);
  static const double n = 4.0 * std::sqrt(2.0);
  static const std::array<double, 4> h = {(1.0 + s3) / n, (3.0 + s3) / n, (3.0 - s3) / n,
                                          (1.0 - s3) / n};
  return h;
}

inline const std::array<double, 4>& daub4_hi() {
  static const std::array<double, 4> g = [] {
    const auto& h = daub4_lo();
    return std::array<double, 4>{h[3], -h[2], h[1], -h[0]};
  }();
  return g;
}

// One periodic analysis step along a strided 1-D signal of even length.
inline void dwt_step(const double* x, int n, int stride, double* lo, double* hi, int out_stride) {
  const auto& h = daub4_lo();
  const auto& g = daub4_hi();
  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    double a = 0.0, d = 0.0;
    for (int t = 0; t < 4; ++t) {
      const double v = x[((2 * i + t) % n) * static_cast<std::size_t>(stride)];
      a += h[t] * v;
      d += g[t] * v;
    }
    lo[i * static_cast<std::size_t>(out_stride)] = a;
    hi[i * static_cast<std::size_t>(out_stride)] = d;
  }
}

inline void idwt_step(const double* lo, const double* hi, int half, int in_stride, double* x,
                      int stride) {
  const auto& h = daub4_lo();
  const auto& g = daub4_hi();
  const int n = 2 * half;
  for (int i = 0; i < n; ++i) x[i * static_cast<std::size_t>(stride)] = 0.0;
  for (int i = 0; i < half; ++i) {
    const double a = lo[i * static_cast<std::size_t>(in_stride)];
    const double d = hi[i * static_cast<std::size_t>(in_stride)];
    for (int t = 0; t < 4; ++t) {
      x[((2 * i + t) % n) * static_cast<std::size_t>(stride)] += h[t] * a + g[t] * d;
    }
  }
}

}  // namespace detail

/// One-level separable DWT with periodic extension. Requires even dims.
inline WaveletCoefficients dwt2(const Image& img) {
  const int m = img.rows(), n = img.cols();
  if (m % 2 != 0 || n % 2 != 0) throw std::invalid_argument("dwt2: dimensions must be even");

  // Row pass: [L | H] halves along x.
  Image rowpass(m, n);
  for (int r = 0; r < m; ++r) {
    detail::dwt_step(&img(r, 0), n, 1, &rowpass(r, 0), &rowpass(r, n / 2), 1);
  }
  // Column pass on each half.
  WaveletCoefficients out;
  out.approx = Image(m / 2, n / 2);
  out.vertical = Image(m / 2, n / 2);
  out.horizontal = Image(m / 2, n / 2);
  out.diagonal = Image(m / 2, n / 2);
  std::vector<double> lo(m / 2), hi(m / 2);
  for (int c = 0; c < n; ++c) {
    detail::dwt_step(&rowpass(0, c), m, n, lo.data(), hi.data(), 1);
    const bool right = c >= n / 2;
    const int cc = right ? c - n / 2 : c;
    for (int r = 0; r < m / 2; ++r) {
      if (right) {
        out.vertical(r, cc) = lo[r];
        out.diagonal(r, cc) = hi[r];
      } else {
        out.approx(r, cc) = lo[r];
        out.horizontal(r, cc) = hi[r];
      }
    }
  }
  return out;
}

/// Single-level undecimated D4 decomposition: four full-resolution planes,
/// shift invariant, forming a tight frame with frame constant 4. The SME
/// baseline measures directional regularity on these planes; the decimated
/// transform above aliases along-edge structure and cannot.
struct StationaryWavelet {
  Image approx;
  Image vertical;    // high pass along x
  Image horizontal;  // high pass along y
  Image diagonal;
};

namespace detail {

// Circular correlation along rows (axis=1) or columns (axis=0).
inline Image filter_axis(const Image& img, const std::array<double, 4>& f, int axis) {
  const int m = img.rows(), n = img.cols();
  Image out(m, n);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) {
      double acc = 0.0;
      for (int t = 0; t < 4; ++t) {
        const int rr = axis == 0 ? (r + t) % m : r;
        const int cc = axis == 1 ? (c + t) % n : c;
        acc += f[t] * img(rr, cc);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

// Adjoint of filter_axis.
inline void filter_axis_adjoint_add(const Image& coeff, const std::array<double, 4>& f, int axis,
                                    Image& out) {
  const int m = coeff.rows(), n = coeff.cols();
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) {
      const double v = coeff(r, c);
      for (int t = 0; t < 4; ++t) {
        const int rr = axis == 0 ? (r + t) % m : r;
        const int cc = axis == 1 ? (c + t) % n : c;
        out(rr, cc) += f[t] * v;
      }
    }
  }
}

}  // namespace detail

inline StationaryWavelet swt2(const Image& img) {
  const auto& h = detail::daub4_lo();
  const auto& g = detail::daub4_hi();
  const Image lo = detail::filter_axis(img, h, 1);
  const Image hi = detail::filter_axis(img, g, 1);
  StationaryWavelet out;
  out.approx = detail::filter_axis(lo, h, 0);
  out.horizontal = detail::filter_axis(lo, g, 0);
  out.vertical = detail::filter_axis(hi, h, 0);
  out.diagonal = detail::filter_axis(hi, g, 0);
  return out;
}

/// Adjoint of swt2 divided by the frame constant 4; exact inverse.
inline Image iswt2(const StationaryWavelet& coeffs) {
  const Image& a = coeffs.approx;
  if (!a.same_dims(coeffs.vertical) || !a.same_dims(coeffs.horizontal) ||
      !a.same_dims(coeffs.diagonal)) {
    throw std::invalid_argument("iswt2: plane dimension mismatch");
  }
  const auto& h = detail::daub4_lo();
  const auto& g = detail::daub4_hi();
  const int m = a.rows(), n = a.cols();
  Image lo(m, n, 0.0), hi(m, n, 0.0);
  detail::filter_axis_adjoint_add(coeffs.approx, h, 0, lo);
  detail::filter_axis_adjoint_add(coeffs.horizontal, g, 0, lo);
  detail::filter_axis_adjoint_add(coeffs.vertical, h, 0, hi);
  detail::filter_axis_adjoint_add(coeffs.diagonal, g, 0, hi);
  Image out(m, n, 0.0);
  detail::filter_axis_adjoint_add(lo, h, 1, out);
  detail::filter_axis_adjoint_add(hi, g, 1, out);
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= 0.25;
  return out;
}

/// Exact inverse of dwt2.
inline Image idwt2(const WaveletCoefficients& coeffs) {
  const Image& a = coeffs.approx;
  if (!a.same_dims(coeffs.vertical) || !a.same_dims(coeffs.horizontal) ||
      !a.same_dims(coeffs.diagonal)) {
    throw std::invalid_argument("idwt2: plane dimension mismatch");
  }
  const int m = 2 * a.rows(), n = 2 * a.cols();
  Image rowpass(m, n);
  std::vector<double> col(m);
  for (int c = 0; c < n / 2; ++c) {
    detail::idwt_step(&a(0, c), &coeffs.horizontal(0, c), m / 2, a.cols(), col.data(), 1);
    for (int r = 0; r < m; ++r) rowpass(r, c) = col[r];
    detail::idwt_step(&coeffs.vertical(0, c), &coeffs.diagonal(0, c), m / 2, a.cols(), col.data(), 1);
    for (int r = 0; r < m; ++r) rowpass(r, c + n / 2) = col[r];
  }
  Image out(m, n);
  for (int r = 0; r < m; ++r) {
    detail::idwt_step(&rowpass(r, 0), &rowpass(r, n / 2), n / 2, 1, &out(r, 0), 1);
  }
  return out;
}

}  // namespace shearsr
