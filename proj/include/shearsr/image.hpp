// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace shearsr {

/// Row-major real-valued matrix. Used both for grayscale images (values in
/// [0,1] after load/generate/clamp) and for intermediate real-valued planes
/// such as transform coefficients, which may leave that range.
class Image {
 public:
  Image() = default;
  Image(int rows, int cols, double value = 0.0)
      : rows_(rows), cols_(cols), pix_(static_cast<std::size_t>(rows) * cols, value) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("Image: dimensions must be >= 1");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return pix_.size(); }

  double& operator()(int r, int c) { return pix_[static_cast<std::size_t>(r) * cols_ + c]; }
  const double& operator()(int r, int c) const {
    return pix_[static_cast<std::size_t>(r) * cols_ + c];
  }

  double* data() { return pix_.data(); }
  const double* data() const { return pix_.data(); }

  bool same_dims(const Image& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> pix_;
};

inline Image clamp01(Image img) {
  for (std::size_t i = 0; i < img.size(); ++i) {
    double v = img.data()[i];
    img.data()[i] = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  }
  return img;
}

inline double max_abs_diff(const Image& a, const Image& b) {
  if (!a.same_dims(b)) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

/// Peak signal-to-noise ratio in dB for unit-peak images. Returns +infinity
/// when the images are identical.
inline double psnr(const Image& reference, const Image& test) {
  if (!reference.same_dims(test)) throw std::invalid_argument("psnr: dimension mismatch");
  double sq = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = reference.data()[i] - test.data()[i];
    sq += d * d;
  }
  const double mse = sq / static_cast<double>(reference.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(mse);
}

namespace detail {

inline int pgm_next_token(std::istream& in, std::string& tok) {
  tok.clear();
  int ch = in.get();
  // skip whitespace and '#' comment lines
  while (ch != EOF && (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '#')) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    }
    ch = in.get();
  }
  while (ch != EOF && ch != ' ' && ch != '\t' && ch != '\r' && ch != '\n' && ch != '#') {
    tok.push_back(static_cast<char>(ch));
    ch = in.get();
  }
  return ch;
}

inline int pgm_parse_uint(const std::string& tok) {
  if (tok.empty()) throw std::runtime_error("PGM: malformed header (missing field)");
  long v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') throw std::runtime_error("PGM: malformed header (non-numeric field)");
    v = v * 10 + (c - '0');
    if (v > 1 << 30) throw std::runtime_error("PGM: malformed header (field out of range)");
  }
  return static_cast<int>(v);
}

}  // namespace detail

/// Reads a binary PGM (P5) file, 8- or 16-bit (big-endian), scaled to [0,1].
inline Image load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("PGM: cannot open '" + path + "'");

  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5') {
    throw std::runtime_error("PGM: unsupported magic number in '" + path + "'");
  }

  std::string tok;
  detail::pgm_next_token(in, tok);
  const int width = detail::pgm_parse_uint(tok);
  detail::pgm_next_token(in, tok);
  const int height = detail::pgm_parse_uint(tok);
  int last = detail::pgm_next_token(in, tok);
  const int maxval = detail::pgm_parse_uint(tok);
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
    throw std::runtime_error("PGM: malformed header (bad dimensions or maxval)");
  }
  if (last == EOF) throw std::runtime_error("PGM: truncated payload in '" + path + "'");
  // `last` consumed the single whitespace byte separating header and payload.

  Image img(height, width);
  const bool wide = maxval > 255;
  const std::size_t n = img.size();
  std::vector<unsigned char> buf(n * (wide ? 2 : 1));
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (static_cast<std::size_t>(in.gcount()) != buf.size()) {
    throw std::runtime_error("PGM: truncated payload in '" + path + "'");
  }
  const double scale = 1.0 / maxval;
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned v = wide ? (static_cast<unsigned>(buf[2 * i]) << 8 | buf[2 * i + 1]) : buf[i];
    img.data()[i] = std::min<unsigned>(v, maxval) * scale;
  }
  return img;
}

/// Writes an 8-bit binary PGM (P5, maxval 255). Values are clamped and
/// rounded; a load/save round trip is exact to within 1/(2*255) per pixel.
inline void save_pgm(const Image& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("PGM: unwritable path '" + path + "'");
  out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
  std::vector<unsigned char> buf(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) {
    double v = img.data()[i];
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    buf[i] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("PGM: unwritable path '" + path + "'");
}

// Synthetic test scenes. Pixel (row y, col x) uses centered coordinates
// x_c = x - (N-1)/2, y_c = (M-1)/2 - y (y_c increases upward); membership is
// strict so boundary hits resolve to 0.

inline Image gen_half_plane(int size, double slope) {
  if (size < 2) throw std::invalid_argument("gen_half_plane: size must be >= 2");
  Image img(size, size);
  const double half = (size - 1) / 2.0;
  for (int r = 0; r < size; ++r) {
    const double yc = half - r;
    for (int c = 0; c < size; ++c) {
      const double xc = c - half;
      img(r, c) = yc > slope * xc ? 1.0 : 0.0;
    }
  }
  return img;
}

inline Image gen_circle(int size, double radius_fraction) {
  if (size < 2) throw std::invalid_argument("gen_circle: size must be >= 2");
  if (!(radius_fraction > 0.0 && radius_fraction < 0.5)) {
    throw std::invalid_argument("gen_circle: radius_fraction must be in (0, 0.5)");
  }
  Image img(size, size);
  const double half = (size - 1) / 2.0;
  const double r2 = radius_fraction * size * radius_fraction * size;
  for (int r = 0; r < size; ++r) {
    const double yc = half - r;
    for (int c = 0; c < size; ++c) {
      const double xc = c - half;
      img(r, c) = xc * xc + yc * yc < r2 ? 1.0 : 0.0;
    }
  }
  return img;
}

inline Image gen_parabola(int size, double curvature) {
  if (size < 2) throw std::invalid_argument("gen_parabola: size must be >= 2");
  if (!(curvature > 0.0)) throw std::invalid_argument("gen_parabola: curvature must be > 0");
  Image img(size, size);
  const double half = (size - 1) / 2.0;
  for (int r = 0; r < size; ++r) {
    const double yc = half - r;
    for (int c = 0; c < size; ++c) {
      const double xc = c - half;
      img(r, c) = yc > curvature * xc * xc ? 1.0 : 0.0;
    }
  }
  return img;
}

}  // namespace shearsr
