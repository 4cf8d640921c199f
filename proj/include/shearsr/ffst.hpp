// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "shearsr/image.hpp"
#include "shearsr/spectral.hpp"

namespace shearsr {

// ---------------------------------------------------------------------------
// Meyer-type generator functions (frequency domain)
// ---------------------------------------------------------------------------

/// Meyer auxiliary polynomial: 0 below 0, 35x^4-84x^5+70x^6-20x^7 on [0,1],
/// 1 above 1. Satisfies v(x) + v(1-x) = 1.
inline double meyer_v(double x) {
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  const double x4 = x * x * x * x;
  return x4 * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)));
}

/// Radial bump: sin(pi/2 v(|w|-1)) on 1<=|w|<=2, cos(pi/2 v(|w|/2-1)) on
/// 2<|w|<=4, zero elsewhere. b^2(w) + b^2(2w) = 1 on [1,2].
inline double meyer_b(double w) {
  const double a = std::abs(w);
  if (a >= 1.0 && a <= 2.0) return std::sin(M_PI / 2.0 * meyer_v(a - 1.0));
  if (a > 2.0 && a <= 4.0) return std::cos(M_PI / 2.0 * meyer_v(a / 2.0 - 1.0));
  return 0.0;
}

/// Radial window, support [-4,-1/2] u [1/2,4], plateau 1 on 1<=|w|<=2.
inline double psi1_hat(double w) {
  const double b1 = meyer_b(2.0 * w);
  const double b2 = meyer_b(w);
  return std::sqrt(b1 * b1 + b2 * b2);
}

/// Angular window, even, support [-1,1], psi2_hat(0) = 1;
/// sum_{k=-1,0,1} psi2_hat(k+x)^2 = 1 on [-1,1].
inline double psi2_hat(double w) {
  return w <= 0.0 ? std::sqrt(meyer_v(1.0 + w)) : std::sqrt(meyer_v(1.0 - w));
}

namespace detail {

/// 1-D Meyer scaling window: 1 on |w|<=1/2, cosine roll-off to 0 at |w|=1.
inline double meyer_scaling_1d(double w) {
  const double a = std::abs(w);
  if (a <= 0.5) return 1.0;
  if (a < 1.0) return std::cos(M_PI / 2.0 * meyer_v(2.0 * a - 1.0));
  return 0.0;
}

/// Radial window of the finest retained scale: continues as 1 beyond the
/// plateau so the scale sum stays an exact partition of unity on grids whose
/// maximum frequency exceeds 2^(2J-1). A no-op where the plain window is
/// already nonzero only on-plateau.
inline double psi1_hat_top(double w) {
  return std::abs(w) >= 1.0 ? 1.0 : psi1_hat(w);
}

}  // namespace detail

/// 2-D Meyer scaling function: phi applied to the dominating coordinate.
inline double phi_hat(double w1, double w2) {
  return detail::meyer_scaling_1d(std::max(std::abs(w1), std::abs(w2)));
}

// ---------------------------------------------------------------------------
// Cone-adapted filter bank
// ---------------------------------------------------------------------------

enum class Cone : std::uint8_t { lowpass, horizontal, vertical, seam };

inline const char* cone_name(Cone c) {
  switch (c) {
    case Cone::lowpass: return "lowpass";
    case Cone::horizontal: return "h";
    case Cone::vertical: return "v";
    case Cone::seam: return "hxv";
  }
  return "?";
}

struct BandInfo {
  Cone cone = Cone::lowpass;
  int scale = -1;  // j; -1 for the low pass
  int shear = 0;   // k
};

/// Frequency-domain shearlet filter bank on a fixed M x N grid.
///
/// Band layout: id 0 is the low pass; for each scale j the vertical-cone
/// shears k = -(2^j-1)..(2^j-1), then the horizontal-cone shears, then the
/// two seam filters k = -2^j, +2^j. Vertical-cone band (j,k) peaks on edges
/// of slope k/2^j (slopes measured in the image convention of the synthetic
/// generators: x right, y up); horizontal-cone bands index reciprocal slope.
///
/// All filters are real, in [0,1], and their squares sum to 1 at every grid
/// frequency.
class ShearletSystem {
 public:
  ShearletSystem(int rows, int cols, int scales) : rows_(rows), cols_(cols), scales_(scales) {
    if (rows < 4 || cols < 4) throw std::invalid_argument("ShearletSystem: dims must be >= 4");
    const int jmax = static_cast<int>(std::floor(std::log2(static_cast<double>(std::max(rows, cols)))));
    if (scales < 1 || scales > jmax) {
      throw std::invalid_argument("ShearletSystem: scales out of range [1, " + std::to_string(jmax) + "]");
    }
    build();
  }

  static int default_scales(int rows, int cols) {
    const int j = static_cast<int>(std::floor(0.5 * std::log2(static_cast<double>(std::max(rows, cols)))));
    return std::max(1, j);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int scales() const { return scales_; }
  int band_count() const { return static_cast<int>(bands_.size()); }
  const BandInfo& band(int id) const { return bands_[id]; }
  const std::vector<BandInfo>& bands() const { return bands_; }

  /// Filter plane for a band, natural DFT storage order, size rows*cols.
  const std::vector<double>& filter(int id) const { return filters_[id]; }

  /// Ids of all shear bands (both cones plus seams) at scale j, in band order.
  std::vector<int> scale_bands(int j) const {
    std::vector<int> ids;
    for (int i = 0; i < band_count(); ++i) {
      if (bands_[i].scale == j && bands_[i].cone != Cone::lowpass) ids.push_back(i);
    }
    return ids;
  }

  /// Max over grid frequencies of |sum of squared filters - 1|.
  double max_tightness_deviation() const {
    double dev = 0.0;
    const std::size_t n = static_cast<std::size_t>(rows_) * cols_;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (const auto& f : filters_) s += f[i] * f[i];
      dev = std::max(dev, std::abs(s - 1.0));
    }
    return dev;
  }

 private:
  void build() {
    bands_.push_back({Cone::lowpass, -1, 0});
    for (int j = 0; j < scales_; ++j) {
      const int kmax = 1 << j;
      for (int k = -(kmax - 1); k <= kmax - 1; ++k) bands_.push_back({Cone::vertical, j, k});
      for (int k = -(kmax - 1); k <= kmax - 1; ++k) bands_.push_back({Cone::horizontal, j, k});
      bands_.push_back({Cone::seam, j, -kmax});
      bands_.push_back({Cone::seam, j, kmax});
    }
    filters_.resize(bands_.size());
    for (std::size_t b = 0; b < bands_.size(); ++b) {
      filters_[b].assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
      sample_band(bands_[b], filters_[b]);
    }
    symmetrize_nyquist();
  }

  double radial(int j, double x) const {
    return j == scales_ - 1 ? detail::psi1_hat_top(x) : psi1_hat(x);
  }

  // Vertical-cone expression: psi1 on the row frequency, angular window on
  // the column/row ratio. The zero row frequency belongs to the low pass.
  double eval_vertical(int j, int k, int u, int w) const {
    if (u == 0) return 0.0;
    const double aj = std::ldexp(1.0, -2 * j);
    const double sj = std::ldexp(1.0, j);
    return radial(j, aj * u) * psi2_hat(sj * (static_cast<double>(w) / u) - k);
  }

  double eval_horizontal(int j, int k, int u, int w) const {
    if (w == 0) return 0.0;
    const double aj = std::ldexp(1.0, -2 * j);
    const double sj = std::ldexp(1.0, j);
    return radial(j, aj * w) * psi2_hat(sj * (static_cast<double>(u) / w) - k);
  }

  void sample_band(const BandInfo& info, std::vector<double>& f) const {
    for (int i1 = 0; i1 < rows_; ++i1) {
      const int u = Spectrum::freq_of_index(i1, rows_);
      for (int i2 = 0; i2 < cols_; ++i2) {
        const int w = Spectrum::freq_of_index(i2, cols_);
        double val = 0.0;
        switch (info.cone) {
          case Cone::lowpass:
            val = phi_hat(u, w);
            break;
          case Cone::vertical:
            val = eval_vertical(info.scale, info.shear, u, w);
            break;
          case Cone::horizontal:
            val = eval_horizontal(info.scale, info.shear, u, w);
            break;
          case Cone::seam:
            // Glued across the diagonal; both expressions agree on |w| == |u|.
            val = std::abs(w) <= std::abs(u) ? eval_vertical(info.scale, info.shear, u, w)
                                             : eval_horizontal(info.scale, info.shear, u, w);
            break;
        }
        f[static_cast<std::size_t>(i1) * cols_ + i2] = val;
      }
    }
  }

  // For even dimensions the unpaired Nyquist frequency breaks the point
  // symmetry filters otherwise have, which would leak imaginary parts into
  // the coefficient planes. Replace each asymmetric Nyquist-line pair by its
  // root-mean-square; pointwise sums of squares are preserved, so tightness
  // and perfect reconstruction are unaffected.
  void symmetrize_nyquist() {
    auto fix_pair = [this](std::size_t p, std::size_t q) {
      for (auto& f : filters_) {
        const double a = f[p], b = f[q];
        if (a != b) f[p] = f[q] = std::sqrt(0.5 * (a * a + b * b));
      }
    };
    if (rows_ % 2 == 0) {
      const int i1 = rows_ / 2;
      for (int i2 = 1; i2 < (cols_ + 1) / 2; ++i2) {
        fix_pair(static_cast<std::size_t>(i1) * cols_ + i2,
                 static_cast<std::size_t>(i1) * cols_ + (cols_ - i2));
      }
    }
    if (cols_ % 2 == 0) {
      const int i2 = cols_ / 2;
      for (int i1 = 1; i1 < (rows_ + 1) / 2; ++i1) {
        fix_pair(static_cast<std::size_t>(i1) * cols_ + i2,
                 static_cast<std::size_t>(rows_ - i1) * cols_ + i2);
      }
    }
  }

  int rows_, cols_, scales_;
  std::vector<BandInfo> bands_;
  std::vector<std::vector<double>> filters_;
};

/// Analysis output: one real plane per band, same grid as the input.
struct ShearletCoefficients {
  int rows = 0;
  int cols = 0;
  std::vector<BandInfo> bands;
  std::vector<Image> planes;
};

inline ShearletCoefficients analyze(const Image& img, const ShearletSystem& sys) {
  if (img.rows() != sys.rows() || img.cols() != sys.cols()) {
    throw std::invalid_argument("analyze: image dims do not match system");
  }
  ShearletCoefficients out;
  out.rows = sys.rows();
  out.cols = sys.cols();
  out.bands = sys.bands();
  out.planes.reserve(sys.band_count());

  const Spectrum f_hat = dft2(img);
  const std::size_t n = f_hat.size();
  Spectrum g(sys.rows(), sys.cols());
  for (int b = 0; b < sys.band_count(); ++b) {
    const std::vector<double>& filt = sys.filter(b);
    for (std::size_t i = 0; i < n; ++i) g.data()[i] = f_hat.data()[i] * filt[i];
    out.planes.push_back(idft2(g));
  }
  return out;
}

/// Adjoint of analyze; exact inverse on analyze output (Parseval tightness).
inline Image synthesize(const ShearletCoefficients& coeffs, const ShearletSystem& sys) {
  if (coeffs.rows != sys.rows() || coeffs.cols != sys.cols() ||
      static_cast<int>(coeffs.planes.size()) != sys.band_count()) {
    throw std::invalid_argument("synthesize: coefficients do not match system");
  }
  const std::size_t n = static_cast<std::size_t>(sys.rows()) * sys.cols();
  std::vector<std::complex<double>> acc(n, 0.0);
  std::vector<std::complex<double>> buf(n);
  for (int b = 0; b < sys.band_count(); ++b) {
    const Image& plane = coeffs.planes[b];
    if (plane.size() != n) throw std::invalid_argument("synthesize: band plane size mismatch");
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (plane.data()[i] != 0.0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) continue;
    for (std::size_t i = 0; i < n; ++i) buf[i] = plane.data()[i];
    detail::fft2(buf.data(), sys.rows(), sys.cols(), false);
    const std::vector<double>& filt = sys.filter(b);
    for (std::size_t i = 0; i < n; ++i) acc[i] += buf[i] * filt[i];
  }
  Spectrum s(sys.rows(), sys.cols());
  std::copy(acc.begin(), acc.end(), s.data());
  return idft2(s);
}

/// Result of slope detection at a pixel. For a vertical-cone winner the edge
/// slope is `slope` directly; for a horizontal-cone winner `slope` estimates
/// the reciprocal of the edge slope. Seam winners (|slope| = 1, where the two
/// readings coincide) are reported as vertical.
struct SlopeDetection {
  int shear = 0;      // winning k
  double slope = 0.0;  // s = k / 2^j
  Cone cone = Cone::vertical;
  int band_id = -1;
};

inline SlopeDetection detect_slope(const ShearletCoefficients& coeffs, int scale, int row, int col) {
  auto rank = [](Cone c) { return c == Cone::horizontal ? 0 : (c == Cone::vertical ? 1 : 2); };
  SlopeDetection best;
  double best_mag = -1.0;
  for (int b = 0; b < static_cast<int>(coeffs.bands.size()); ++b) {
    const BandInfo& info = coeffs.bands[b];
    if (info.scale != scale || info.cone == Cone::lowpass) continue;
    const double mag = std::abs(coeffs.planes[b](row, col));
    bool take = mag > best_mag;
    if (!take && mag == best_mag && best.band_id >= 0) {
      // Ties: smallest |k| wins, then cone h before v.
      if (std::abs(info.shear) < std::abs(best.shear)) take = true;
      else if (std::abs(info.shear) == std::abs(best.shear) && rank(info.cone) < rank(best.cone)) take = true;
    }
    if (take) {
      best_mag = mag;
      best.shear = info.shear;
      best.slope = std::ldexp(static_cast<double>(info.shear), -scale);
      best.cone = info.cone == Cone::seam ? Cone::vertical : info.cone;
      best.band_id = b;
    }
  }
  if (best.band_id < 0) throw std::invalid_argument("detect_slope: no shear bands at that scale");
  return best;
}

}  // namespace shearsr
