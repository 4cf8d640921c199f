// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "shearsr/image.hpp"

namespace shearsr {

namespace detail {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, unnormalized in both directions.
inline void fft_pow2(cplx* a, std::size_t n, bool inverse) {
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx w = std::polar(1.0, ang * static_cast<double>(k));
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

// Bluestein chirp-z for arbitrary n; unnormalized. The chirp exponent is
// reduced mod 2n to keep the trig argument small.
inline void fft_bluestein(cplx* x, std::size_t n, bool inverse) {
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t kk = (k * k) % (2 * n);
    chirp[k] = std::polar(1.0, sign * M_PI * static_cast<double>(kk) / static_cast<double>(n));
  }
  std::vector<cplx> a(m, cplx(0.0)), b(m, cplx(0.0));
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
  fft_pow2(a.data(), m, false);
  fft_pow2(b.data(), m, false);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  fft_pow2(a.data(), m, true);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * inv_m * chirp[k];
}

inline void fft(cplx* a, std::size_t n, bool inverse) {
  if (n <= 1) return;
  if (is_pow2(n)) {
    fft_pow2(a, n, inverse);
  } else {
    fft_bluestein(a, n, inverse);
  }
}

// 2-D transform over a row-major buffer, unnormalized in both directions.
inline void fft2(cplx* a, int rows, int cols, bool inverse) {
  for (int r = 0; r < rows; ++r) fft(a + static_cast<std::size_t>(r) * cols, cols, inverse);
  std::vector<cplx> col(rows);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) col[r] = a[static_cast<std::size_t>(r) * cols + c];
    fft(col.data(), rows, inverse);
    for (int r = 0; r < rows; ++r) a[static_cast<std::size_t>(r) * cols + c] = col[r];
  }
}

}  // namespace detail

/// 2-D complex spectrum on the centered integer frequency grid
/// w1 in [-floor(M/2), ceil(M/2)-1], w2 in [-floor(N/2), ceil(N/2)-1],
/// where w1 is conjugate to the row index and w2 to the column index.
/// Storage is in natural DFT order.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(int rows, int cols)
      : rows_(rows), cols_(cols), v_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("Spectrum: dimensions must be >= 1");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return v_.size(); }

  int freq_row_min() const { return -(rows_ / 2); }
  int freq_row_max() const { return (rows_ + 1) / 2 - 1; }
  int freq_col_min() const { return -(cols_ / 2); }
  int freq_col_max() const { return (cols_ + 1) / 2 - 1; }

  /// Signed frequency corresponding to natural storage index i along an axis
  /// of length n.
  static int freq_of_index(int i, int n) { return i <= (n + 1) / 2 - 1 ? i : i - n; }
  static int index_of_freq(int w, int n) { return w >= 0 ? w : w + n; }

  std::complex<double>& at_index(int i, int j) {
    return v_[static_cast<std::size_t>(i) * cols_ + j];
  }
  std::complex<double> at_index(int i, int j) const {
    return v_[static_cast<std::size_t>(i) * cols_ + j];
  }
  std::complex<double>& at_freq(int w1, int w2) {
    return at_index(index_of_freq(w1, rows_), index_of_freq(w2, cols_));
  }
  std::complex<double> at_freq(int w1, int w2) const {
    return at_index(index_of_freq(w1, rows_), index_of_freq(w2, cols_));
  }

  std::complex<double>* data() { return v_.data(); }
  const std::complex<double>* data() const { return v_.data(); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::complex<double>> v_;
};

/// Unnormalized forward DFT of a real matrix.
inline Spectrum dft2(const Image& img) {
  Spectrum s(img.rows(), img.cols());
  for (std::size_t i = 0; i < img.size(); ++i) s.data()[i] = img.data()[i];
  detail::fft2(s.data(), s.rows(), s.cols(), false);
  return s;
}

/// Inverse DFT with 1/(M*N) normalization. The input must be conjugate
/// symmetric; an imaginary residue above `imag_tol` (max-abs, after
/// normalization) signals a filter-symmetry bug and throws.
inline Image idft2(const Spectrum& spec, double imag_tol = 1e-10) {
  std::vector<std::complex<double>> buf(spec.data(), spec.data() + spec.size());
  detail::fft2(buf.data(), spec.rows(), spec.cols(), true);
  const double norm = 1.0 / static_cast<double>(spec.size());
  Image out(spec.rows(), spec.cols());
  double max_imag = 0.0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    out.data()[i] = buf[i].real() * norm;
    max_imag = std::max(max_imag, std::abs(buf[i].imag()) * norm);
  }
  if (max_imag > imag_tol) {
    throw std::runtime_error("idft2: imaginary residue " + std::to_string(max_imag) +
                             " exceeds tolerance (non-symmetric spectrum)");
  }
  return out;
}

}  // namespace shearsr
