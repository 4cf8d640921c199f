// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shearsr/directions.hpp"

namespace shearsr {

/// The 28 base rectangles: all ordered (w,h) with w != h and 12 <= w*h <= 18,
/// in lexicographic order. w is the extent along the block's angle, h across.
inline std::vector<std::pair<int, int>> base_shapes() {
  std::vector<std::pair<int, int>> shapes;
  for (int w = 1; w <= 18; ++w) {
    for (int h = 1; h <= 18; ++h) {
      if (w != h && w * h >= 12 && w * h <= 18) shapes.emplace_back(w, h);
    }
  }
  return shapes;
}

/// 20 equally spaced directions in [0, pi), spacing pi/20.
inline std::vector<double> angle_set() {
  std::vector<double> angles(20);
  for (int i = 0; i < 20; ++i) angles[i] = i * (M_PI / 20.0);
  return angles;
}

/// A w x h rectangle rotated by `angle`, rasterized onto the lattice. w is
/// the extent along the angle direction, h across it. `line` groups offsets
/// into the discrete lattice lines running along the snapped angle direction;
/// every offset belongs to exactly one line.
struct BlockShape {
  int w = 0;
  int h = 0;
  double angle = 0.0;
  struct Offset {
    int dr, dc;
    int line;
  };
  std::vector<Offset> offsets;
  int line_count = 0;
  // Whether the line partition has enough extent to rank directions; the
  // weight solver skips blocks where it does not, since their regularizer
  // reflects pixel-scale smoothness rather than orientation.
  bool measures_direction = false;
  int extent_rows = 0;
  int extent_cols = 0;
};

/// Lattice points whose centers fall inside the rotated rectangle
/// [-w/2, w/2) x [-h/2, h/2). Angles in [pi/2, pi) are canonicalized by a
/// quarter turn with swapped sides, so rotating by exactly pi/2 reproduces
/// the swapped axis-aligned block bit for bit. Lines are the lattice lines
/// along the snapped angle direction crossing the footprint.
inline BlockShape rasterize(int w, int h, double angle) {
  if (w < 1 || h < 1) throw std::invalid_argument("rasterize: sides must be >= 1");
  BlockShape shape;
  shape.w = w;
  shape.h = h;
  shape.angle = angle;

  const bool swapped = angle >= M_PI / 2.0;
  const double theta = swapped ? angle - M_PI / 2.0 : angle;
  const int we = swapped ? h : w;
  const int he = swapped ? w : h;
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const LatticeDirection dir = detail::snap_direction(angle);

  const int rad = static_cast<int>(std::ceil(std::hypot(we, he) / 2.0)) + 1;
  std::map<int, int> line_ids;  // lattice-line invariant -> dense id
  std::vector<int> line_sizes;
  int min_r = 0, max_r = 0, min_c = 0, max_c = 0;
  for (int dr = -rad; dr <= rad; ++dr) {
    for (int dc = -rad; dc <= rad; ++dc) {
      const double x = dc, y = -dr;  // image x right, y up
      const double xl = x * ct + y * st;
      const double yl = -x * st + y * ct;
      if (xl < -we / 2.0 || xl >= we / 2.0 || yl < -he / 2.0 || yl >= he / 2.0) continue;
      // Cross product with the snapped direction is constant exactly along it.
      const int key = dr * dir.dcol - dc * dir.drow;
      auto [it, inserted] = line_ids.try_emplace(key, static_cast<int>(line_ids.size()));
      if (inserted) line_sizes.push_back(0);
      shape.offsets.push_back({dr, dc, it->second});
      ++line_sizes[it->second];
      min_r = std::min(min_r, dr);
      max_r = std::max(max_r, dr);
      min_c = std::min(min_c, dc);
      max_c = std::max(max_c, dc);
    }
  }
  shape.line_count = static_cast<int>(line_ids.size());
  shape.extent_rows = max_r - min_r + 1;
  shape.extent_cols = max_c - min_c + 1;
  // Direction can only be ranked along lines with real extent: the block must
  // run long ways along its angle (w > h) and its lines need either three
  // members on average or a mean span of several pixels (long lattice steps
  // reach the span with fewer members).
  const double mean_members =
      static_cast<double>(shape.offsets.size()) / std::max(shape.line_count, 1);
  const double step = std::hypot(dir.drow, dir.dcol);
  shape.measures_direction =
      w > h && (mean_members >= 3.0 || (mean_members - 1.0) * step >= 4.0);
  return shape;
}

struct BlockConfig {
  std::vector<std::pair<int, int>> shapes = base_shapes();
  std::vector<double> angles = angle_set();
};

/// Parses the block-spec override format: one directive per line,
///   shape <W>x<H>     add a base rectangle (repeatable)
///   angles <N>        N equally spaced directions in [0, pi)
///   angle <radians>   add an explicit direction (repeatable, wins over `angles`)
/// Blank lines and '#' comments are ignored. Absent directives keep defaults.
inline BlockConfig parse_block_config(const std::string& text) {
  BlockConfig cfg;
  std::vector<std::pair<int, int>> shapes;
  std::vector<double> explicit_angles;
  int angle_count = -1;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (key == "shape") {
      std::string dims;
      int w = 0, h = 0;
      char x = 0;
      if (!(ls >> dims)) throw std::runtime_error("block config: missing shape value" + where);
      std::istringstream ds(dims);
      if (!(ds >> w >> x >> h) || x != 'x' || w < 1 || h < 1) {
        throw std::runtime_error("block config: bad shape '" + dims + "'" + where);
      }
      shapes.emplace_back(w, h);
    } else if (key == "angles") {
      if (!(ls >> angle_count) || angle_count < 1) {
        throw std::runtime_error("block config: bad angles count" + where);
      }
    } else if (key == "angle") {
      double a = 0.0;
      if (!(ls >> a)) throw std::runtime_error("block config: bad angle value" + where);
      a = std::fmod(a, M_PI);
      if (a < 0.0) a += M_PI;
      explicit_angles.push_back(a);
    } else {
      throw std::runtime_error("block config: unknown directive '" + key + "'" + where);
    }
  }
  if (!shapes.empty()) cfg.shapes = std::move(shapes);
  if (!explicit_angles.empty()) {
    cfg.angles = std::move(explicit_angles);
  } else if (angle_count > 0) {
    cfg.angles.resize(angle_count);
    for (int i = 0; i < angle_count; ++i) cfg.angles[i] = i * (M_PI / angle_count);
  }
  return cfg;
}

/// The full oriented block family on an M x N grid: every (angle, base shape,
/// anchor) triple, anchors translated by single pixels with periodic wrap.
/// Blocks are indexed, never materialized; ids are angle-major, then shape,
/// then anchor in row-major order.
class BlockFamily {
 public:
  BlockFamily(int rows, int cols, BlockConfig cfg = BlockConfig())
      : rows_(rows), cols_(cols), angles_(std::move(cfg.angles)), base_(std::move(cfg.shapes)) {
    if (angles_.empty() || base_.empty()) throw std::invalid_argument("BlockFamily: empty config");
    shapes_.reserve(angles_.size() * base_.size());
    int max_er = 0, max_ec = 0;
    for (double a : angles_) {
      for (const auto& [w, h] : base_) {
        shapes_.push_back(rasterize(w, h, a));
        max_er = std::max(max_er, shapes_.back().extent_rows);
        max_ec = std::max(max_ec, shapes_.back().extent_cols);
      }
    }
    if (rows < max_er || cols < max_ec) {
      throw std::invalid_argument("BlockFamily: grid too small for block extents (" +
                                  std::to_string(max_er) + "x" + std::to_string(max_ec) + ")");
    }
    // Wrap tables cover anchor +/- any offset.
    pad_ = std::max(max_er, max_ec) + 1;
    wrap_r_.resize(rows_ + 2 * pad_);
    wrap_c_.resize(cols_ + 2 * pad_);
    for (int i = 0; i < static_cast<int>(wrap_r_.size()); ++i) {
      wrap_r_[i] = ((i - pad_) % rows_ + rows_) % rows_;
    }
    for (int i = 0; i < static_cast<int>(wrap_c_.size()); ++i) {
      wrap_c_[i] = ((i - pad_) % cols_ + cols_) % cols_;
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int angle_count() const { return static_cast<int>(angles_.size()); }
  int shape_count() const { return static_cast<int>(base_.size()); }
  const std::vector<double>& angles() const { return angles_; }
  const std::vector<std::pair<int, int>>& base() const { return base_; }

  std::size_t anchors() const { return static_cast<std::size_t>(rows_) * cols_; }
  std::size_t blocks_per_angle() const { return static_cast<std::size_t>(shape_count()) * anchors(); }
  std::size_t block_count() const { return static_cast<std::size_t>(angle_count()) * blocks_per_angle(); }

  const BlockShape& shape(int angle_idx, int shape_idx) const {
    return shapes_[static_cast<std::size_t>(angle_idx) * shape_count() + shape_idx];
  }

  struct BlockRef {
    int angle_idx, shape_idx, anchor_row, anchor_col;
  };

  BlockRef decode(std::size_t id) const {
    const std::size_t anchor = id % anchors();
    const std::size_t as = id / anchors();
    return {static_cast<int>(as / shape_count()), static_cast<int>(as % shape_count()),
            static_cast<int>(anchor / cols_), static_cast<int>(anchor % cols_)};
  }

  std::size_t encode(int angle_idx, int shape_idx, int anchor_row, int anchor_col) const {
    return (static_cast<std::size_t>(angle_idx) * shape_count() + shape_idx) * anchors() +
           static_cast<std::size_t>(anchor_row) * cols_ + anchor_col;
  }

  int angle_index_of(std::size_t id) const {
    return static_cast<int>(id / anchors() / shape_count());
  }

  const BlockShape& shape_of(std::size_t id) const {
    const std::size_t as = id / anchors();
    return shapes_[as];
  }

  /// Whether block `id` can rank directions: oriented along its angle and
  /// with a non-degenerate line partition.
  bool measures_direction(std::size_t id) const { return shape_of(id).measures_direction; }

  /// Calls fn(position_index, line_id) for every grid position of block `id`.
  template <class F>
  void visit(std::size_t id, F&& fn) const {
    const BlockRef ref = decode(id);
    const BlockShape& s = shape(ref.angle_idx, ref.shape_idx);
    const int* wr = wrap_r_.data() + pad_ + ref.anchor_row;
    const int* wc = wrap_c_.data() + pad_ + ref.anchor_col;
    for (const auto& o : s.offsets) {
      fn(wr[o.dr] * cols_ + wc[o.dc], o.line);
    }
  }

  bool covers(std::size_t id, int r, int c) const {
    const int p = r * cols_ + c;
    bool hit = false;
    visit(id, [&](int pos, int) { hit = hit || pos == p; });
    return hit;
  }

 private:
  int rows_, cols_;
  std::vector<double> angles_;
  std::vector<std::pair<int, int>> base_;
  std::vector<BlockShape> shapes_;  // angle-major
  int pad_ = 0;
  std::vector<int> wrap_r_, wrap_c_;
};

}  // namespace shearsr
