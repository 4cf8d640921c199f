// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "shearsr/directions.hpp"
#include "shearsr/image.hpp"

namespace shearsr {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline int wrap(int i, int n) { return (i % n + n) % n; }

// Keys cubic (a = -0.5) at the half-sample point, arranged so four equal
// samples reproduce their value exactly: the bracketed difference vanishes.
inline double keys_half(double a, double b, double c, double d) {
  const double inner = b + c;
  return 0.5 * inner + 0.0625 * (inner - (a + d));
}

}  // namespace detail

/// Keeps the even-index samples (phase 0). Requires even dims.
inline Image downsample2(const Image& img) {
  if (img.rows() % 2 != 0 || img.cols() % 2 != 0) {
    throw std::invalid_argument("downsample2: dimensions must be even");
  }
  Image out(img.rows() / 2, img.cols() / 2);
  for (int r = 0; r < out.rows(); ++r) {
    for (int c = 0; c < out.cols(); ++c) out(r, c) = img(2 * r, 2 * c);
  }
  return out;
}

/// 3x3 Gaussian convolution, kernel exp(-(i^2+j^2)/(2 sigma^2)) normalized to
/// unit sum, periodic boundary.
inline Image gaussian_blur3(const Image& img, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_blur3: sigma must be > 0");
  double k[3][3];
  double z = 0.0;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      k[i + 1][j + 1] = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
      z += k[i + 1][j + 1];
    }
  }
  for (auto& row : k) {
    for (double& v : row) v /= z;
  }
  const int m = img.rows(), n = img.cols();
  Image out(m, n);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) {
      double acc = 0.0;
      for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
          acc += k[i + 1][j + 1] * img(detail::wrap(r + i, m), detail::wrap(c + j, n));
        }
      }
      out(r, c) = acc;
    }
  }
  return out;
}

/// Adds i.i.d. N(0, sigma^2) noise, then clamps to [0,1]. Fully determined by
/// `seed`: row r draws from mt19937_64 seeded with
/// splitmix64(seed + GOLDEN*(r+1)), expanded by Box-Muller, so output is
/// independent of any parallel scheduling.
inline Image add_gaussian_noise(const Image& img, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("add_gaussian_noise: sigma must be >= 0");
  Image out = img;
  if (sigma == 0.0) return out;
  for (int r = 0; r < img.rows(); ++r) {
    std::mt19937_64 rng(detail::splitmix64(seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(r) + 1)));
    int c = 0;
    while (c < img.cols()) {
      const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;  // (0,1]
      const double u2 = static_cast<double>(rng() >> 11) * 0x1p-53;          // [0,1)
      const double mag = std::sqrt(-2.0 * std::log(u1));
      const double z0 = mag * std::cos(2.0 * M_PI * u2);
      const double z1 = mag * std::sin(2.0 * M_PI * u2);
      out(r, c) += sigma * z0;
      ++c;
      if (c < img.cols()) {
        out(r, c) += sigma * z1;
        ++c;
      }
    }
  }
  return clamp01(std::move(out));
}

/// Separable 2x Keys cubic-convolution upsampling (a = -0.5), periodic
/// boundary. Input samples are reproduced exactly at even output indices.
/// The odd-odd quadrant is accumulated in a transpose-symmetric order so the
/// operator commutes with transposition bit for bit.
inline Image bicubic_up2(const Image& img) {
  const int m = img.rows(), n = img.cols();
  Image out(2 * m, 2 * n);
  static constexpr std::array<double, 4> kw = {-0.0625, 0.5625, 0.5625, -0.0625};
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) {
      out(2 * r, 2 * c) = img(r, c);
      out(2 * r, 2 * c + 1) =
          detail::keys_half(img(r, detail::wrap(c - 1, n)), img(r, c),
                            img(r, detail::wrap(c + 1, n)), img(r, detail::wrap(c + 2, n)));
      out(2 * r + 1, 2 * c) =
          detail::keys_half(img(detail::wrap(r - 1, m), c), img(r, c),
                            img(detail::wrap(r + 1, m), c), img(detail::wrap(r + 2, m), c));
      // 4x4 tensor point: diagonal terms first, then symmetric pairs.
      double f[4][4];
      for (int s = 0; s < 4; ++s) {
        const int rr = detail::wrap(r - 1 + s, m);
        for (int t = 0; t < 4; ++t) f[s][t] = img(rr, detail::wrap(c - 1 + t, n));
      }
      double acc = 0.0;
      for (int s = 0; s < 4; ++s) acc += kw[s] * kw[s] * f[s][s];
      for (int s = 0; s < 4; ++s) {
        for (int t = s + 1; t < 4; ++t) acc += kw[s] * kw[t] * (f[s][t] + f[t][s]);
      }
      out(2 * r + 1, 2 * c + 1) = acc;
    }
  }
  return out;
}

/// 2x upsampling that fills new pixels by 1-D Keys interpolation along the
/// lattice direction closest to `theta`. The parity class whose ray hits
/// known samples directly is filled from them; the remaining new pixels are
/// filled by a second Keys pass along the same ray over that intermediate
/// field (which backs off to bicubic_up2 values where the ray gives nothing,
/// e.g. for axis-aligned directions).
inline Image directional_up2(const Image& img, double theta) {
  const int m = img.rows(), n = img.cols();
  const int m2 = 2 * m, n2 = 2 * n;
  const auto dir = detail::snap_direction(theta);

  Image mid = bicubic_up2(img);
  auto sample_known = [&](int r, int c, int t) {
    const int rr = detail::wrap(r + t * dir.drow, m2);
    const int cc = detail::wrap(c + t * dir.dcol, n2);
    return img(rr / 2, cc / 2);
  };
  for (int r = 0; r < m2; ++r) {
    for (int c = 0; c < n2; ++c) {
      if (r % 2 == 0 && c % 2 == 0) continue;
      // Known samples sit at odd steps t with q + t*dir even in both axes.
      if ((r + dir.drow) % 2 != 0 || (c + dir.dcol) % 2 != 0) continue;
      mid(r, c) = detail::keys_half(sample_known(r, c, -3), sample_known(r, c, -1),
                                    sample_known(r, c, 1), sample_known(r, c, 3));
    }
  }

  Image out = mid;
  auto sample_mid = [&](int r, int c, int t) {
    return mid(detail::wrap(r + t * dir.drow, m2), detail::wrap(c + t * dir.dcol, n2));
  };
  for (int r = 0; r < m2; ++r) {
    for (int c = 0; c < n2; ++c) {
      if (r % 2 == 0 && c % 2 == 0) continue;
      if ((r + dir.drow) % 2 == 0 && (c + dir.dcol) % 2 == 0) continue;
      out(r, c) = detail::keys_half(sample_mid(r, c, -3), sample_mid(r, c, -1),
                                    sample_mid(r, c, 1), sample_mid(r, c, 3));
    }
  }
  return out;
}

/// Degradation pipeline: downsample by 2, then optional 3x3 Gaussian blur
/// (sigma 0.5), then optional Gaussian noise (sigma 0.1, seeded).
struct DegradationSpec {
  bool blur = false;
  bool noise = false;
  std::uint64_t noise_seed = 0;
  double blur_sigma = 0.5;
  double noise_sigma = 0.1;
  std::string name = "ds";
};

/// Grammar: ds(\+blur)?(\+noise:<seed>)? with literal tokens.
inline DegradationSpec parse_degradation(const std::string& text) {
  DegradationSpec spec;
  spec.name = text;
  std::size_t i = 0;
  auto expect = [&](const std::string& tok) {
    if (text.compare(i, tok.size(), tok) != 0) return false;
    i += tok.size();
    return true;
  };
  if (!expect("ds")) throw std::runtime_error("degradation: must start with 'ds': '" + text + "'");
  if (expect("+blur")) spec.blur = true;
  if (expect("+noise:")) {
    spec.noise = true;
    if (i >= text.size()) throw std::runtime_error("degradation: missing noise seed: '" + text + "'");
    std::uint64_t v = 0;
    for (; i < text.size(); ++i) {
      const char ch = text[i];
      if (ch < '0' || ch > '9') break;
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    spec.noise_seed = v;
  }
  if (i != text.size()) throw std::runtime_error("degradation: trailing junk in '" + text + "'");
  return spec;
}

inline Image apply_degradation(const Image& img, const DegradationSpec& spec) {
  Image out = downsample2(img);
  if (spec.blur) out = gaussian_blur3(out, spec.blur_sigma);
  if (spec.noise) out = add_gaussian_noise(out, spec.noise_sigma, spec.noise_seed);
  return out;
}

}  // namespace shearsr
