// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shearsr/blocks.hpp"
#include "shearsr/image.hpp"

namespace shearsr {

/// Frame coefficients restricted to one decomposition level: `channels`
/// values per grid position, stored position-major so a block touches
/// contiguous channel strips.
struct CoeffMatrix {
  int rows = 0;
  int cols = 0;
  int channels = 0;
  std::vector<double> v;  // [pos * channels + ch]

  CoeffMatrix() = default;
  CoeffMatrix(int r, int c, int k)
      : rows(r), cols(c), channels(k), v(static_cast<std::size_t>(r) * c * k, 0.0) {}

  std::size_t positions() const { return static_cast<std::size_t>(rows) * cols; }
  double& at(std::size_t pos, int ch) { return v[pos * channels + ch]; }
  double at(std::size_t pos, int ch) const { return v[pos * channels + ch]; }
};

/// Materialized view of one block: grid positions plus the id of the
/// angle-direction line each position lies on.
struct BlockView {
  std::vector<int> positions;
  std::vector<int> lines;
};

template <class Provider>
BlockView block_view(const Provider& blocks, std::size_t id) {
  BlockView view;
  blocks.visit(id, [&](int pos, int line) {
    view.positions.push_back(pos);
    view.lines.push_back(line);
  });
  return view;
}

/// Per-(position, channel) averages of the block's coefficients along its
/// angle-direction lines, in block position order.
inline std::vector<double> directional_average(const CoeffMatrix& c, const BlockView& b) {
  const int k = c.channels;
  int line_max = 0;
  for (int l : b.lines) line_max = std::max(line_max, l + 1);
  std::vector<double> sums(static_cast<std::size_t>(line_max) * k, 0.0);
  std::vector<int> counts(line_max, 0);
  for (std::size_t i = 0; i < b.positions.size(); ++i) {
    const double* row = &c.v[static_cast<std::size_t>(b.positions[i]) * k];
    double* s = &sums[static_cast<std::size_t>(b.lines[i]) * k];
    for (int ch = 0; ch < k; ++ch) s[ch] += row[ch];
    ++counts[b.lines[i]];
  }
  std::vector<double> means(b.positions.size() * k);
  for (std::size_t i = 0; i < b.positions.size(); ++i) {
    const double* s = &sums[static_cast<std::size_t>(b.lines[i]) * k];
    const double inv = 1.0 / counts[b.lines[i]];
    for (int ch = 0; ch < k; ++ch) means[i * k + ch] = s[ch] * inv;
  }
  return means;
}

/// Directional regularity energy: squared deviation of the block's
/// coefficients from their line averages, summed over channels and positions.
inline double regularizer(const CoeffMatrix& c, const BlockView& b) {
  const std::vector<double> means = directional_average(c, b);
  const int k = c.channels;
  double r = 0.0;
  for (std::size_t i = 0; i < b.positions.size(); ++i) {
    const double* row = &c.v[static_cast<std::size_t>(b.positions[i]) * k];
    for (int ch = 0; ch < k; ++ch) {
      const double d = row[ch] - means[i * k + ch];
      r += d * d;
    }
  }
  return r;
}

struct SolveOptions {
  int max_sweeps = 10;
  double rel_tol = 1e-8;     // stop when the objective decrease falls below this, relative
  double prune_rel = 1e-12;  // skip blocks with coefficient energy below prune_rel * total
  bool skip_degenerate = true;  // skip blocks whose lines are mostly singletons; their
                                // regularizer measures no directional variation
};

/// Nonnegative mixing weights, zeros omitted, sorted by block id.
struct MixingWeights {
  std::vector<std::pair<std::size_t, double>> entries;
  double lambda = 0.0;
  double objective = 0.0;
  int sweeps_run = 0;

  double find(std::size_t id) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), id,
                               [](const auto& e, std::size_t v) { return e.first < v; });
    return it != entries.end() && it->first == id ? it->second : 0.0;
  }
};

/// Block coordinate descent on
///   1/2 sum_p E(p) (1 - sum_{B covering p} a(B))^2 + lambda sum_B a(B) rho_B
/// over a(B) >= 0, where E(p) is the per-position coefficient energy and
/// rho_B the directional regularizer. Each update solves its one-dimensional
/// subproblem exactly, so the objective never increases. Initialized from the
/// disjoint-block closed form max(0, 1 - lambda rho_B / E_B); blocks are
/// swept in id order, giving deterministic output.
template <class Provider>
MixingWeights solve_weights(const CoeffMatrix& c, const Provider& blocks, double lambda,
                            const SolveOptions& opt = SolveOptions()) {
  if (lambda < 0.0) throw std::invalid_argument("solve_weights: lambda must be >= 0");
  MixingWeights out;
  out.lambda = lambda;

  const std::size_t npos = c.positions();
  const int k = c.channels;
  std::vector<double> energy(npos, 0.0);
  double total = 0.0;
  for (std::size_t p = 0; p < npos; ++p) {
    double e = 0.0;
    const double* row = &c.v[p * k];
    for (int ch = 0; ch < k; ++ch) e += row[ch] * row[ch];
    energy[p] = e;
    total += e;
  }

  // Activation pass: energy pruning, degeneracy, regularizer values.
  std::vector<std::uint64_t> ids;
  std::vector<double> rho, eb;
  std::vector<int> pos_buf, line_buf;
  std::vector<double> line_sums;
  std::vector<int> line_counts;
  const double prune = opt.prune_rel * total;
  const std::size_t count = blocks.block_count();
  for (std::size_t id = 0; id < count; ++id) {
    if constexpr (requires { blocks.measures_direction(id); }) {
      if (opt.skip_degenerate && !blocks.measures_direction(id)) continue;
    }
    pos_buf.clear();
    line_buf.clear();
    int line_max = 0;
    blocks.visit(id, [&](int pos, int line) {
      pos_buf.push_back(pos);
      line_buf.push_back(line);
      line_max = std::max(line_max, line + 1);
    });
    double e = 0.0;
    for (int p : pos_buf) e += energy[p];
    if (!(e > prune) || e == 0.0) continue;

    line_sums.assign(static_cast<std::size_t>(line_max) * k, 0.0);
    line_counts.assign(line_max, 0);
    for (std::size_t i = 0; i < pos_buf.size(); ++i) {
      const double* row = &c.v[static_cast<std::size_t>(pos_buf[i]) * k];
      double* s = &line_sums[static_cast<std::size_t>(line_buf[i]) * k];
      for (int ch = 0; ch < k; ++ch) s[ch] += row[ch];
      ++line_counts[line_buf[i]];
    }
    if (opt.skip_degenerate) {
      int multi = 0, single = 0;
      for (int n : line_counts) {
        if (n == 1) ++single;
        if (n >= 2) multi += n;
      }
      if (multi < single) continue;
    }
    double mean_energy = 0.0;
    for (int l = 0; l < line_max; ++l) {
      if (line_counts[l] == 0) continue;
      const double inv = 1.0 / line_counts[l];
      const double* s = &line_sums[static_cast<std::size_t>(l) * k];
      for (int ch = 0; ch < k; ++ch) mean_energy += s[ch] * s[ch] * inv;
    }
    ids.push_back(id);
    eb.push_back(e);
    rho.push_back(std::max(0.0, e - mean_energy));
  }

  std::vector<double> a(ids.size());
  std::vector<double> cover(npos, 0.0);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    a[i] = std::max(0.0, 1.0 - lambda * rho[i] / eb[i]);
    if (a[i] != 0.0) {
      blocks.visit(ids[i], [&](int pos, int) { cover[pos] += a[i]; });
    }
  }

  auto objective = [&]() {
    double fidelity = 0.0;
    for (std::size_t p = 0; p < npos; ++p) {
      const double r = 1.0 - cover[p];
      fidelity += energy[p] * r * r;
    }
    double penalty = 0.0;
    for (std::size_t i = 0; i < ids.size(); ++i) penalty += a[i] * rho[i];
    return 0.5 * fidelity + lambda * penalty;
  };

  double prev = objective();
  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      pos_buf.clear();
      blocks.visit(ids[i], [&](int pos, int) { pos_buf.push_back(pos); });
      double num = a[i] * eb[i] - lambda * rho[i];
      for (int p : pos_buf) num += energy[p] * (1.0 - cover[p]);
      const double next = std::max(0.0, num / eb[i]);
      const double delta = next - a[i];
      if (delta != 0.0) {
        for (int p : pos_buf) cover[p] += delta;
        a[i] = next;
      }
    }
    out.sweeps_run = sweep + 1;
    const double cur = objective();
    if (cur > prev + 1e-9 * (1.0 + std::abs(prev))) {
      throw std::logic_error("solve_weights: objective increased");
    }
    const double drop = prev - cur;
    prev = cur;
    if (drop <= opt.rel_tol * std::max(std::abs(cur), 1e-300)) break;
  }
  out.objective = prev;

  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (a[i] > 0.0) {
      // Nonnegative covers and per-block exact minimization keep every
      // weight at most 1.
      if (a[i] > 1.0 + 1e-9) throw std::logic_error("solve_weights: weight exceeded 1");
      out.entries.emplace_back(ids[i], a[i]);
    }
  }
  return out;
}

using Upsampler = std::function<Image(const Image&)>;
/// Frame-specific synthesis of coefficients scaled by a per-position mask.
using MaskedSynthesizer = std::function<Image(const std::vector<double>&)>;

/// Mixed directional reconstruction:
///   iso(y) + sum_theta (up_theta - iso)(synth(mask_theta))
/// where mask_theta is the angle-theta coverage sum of the mixing weights.
/// `directional` must supply an upsampler for every family angle that holds
/// weight. Output is clamped to [0,1] unless `clamp_output` is false.
inline Image mix_and_reconstruct(const Image& y, const MixingWeights& weights,
                                 const BlockFamily& family, const MaskedSynthesizer& synth,
                                 const Upsampler& iso, const std::vector<Upsampler>& directional,
                                 bool clamp_output = true) {
  if (static_cast<int>(directional.size()) != family.angle_count()) {
    throw std::invalid_argument("mix_and_reconstruct: one directional upsampler per angle required");
  }
  if (!weights.entries.empty() && weights.entries.back().first >= family.block_count()) {
    throw std::invalid_argument("mix_and_reconstruct: weight ids do not fit the family");
  }
  Image out = iso(y);
  std::vector<double> mask;
  auto entry = weights.entries.begin();
  for (int ang = 0; ang < family.angle_count(); ++ang) {
    mask.assign(family.anchors(), 0.0);
    bool any = false;
    while (entry != weights.entries.end() && family.angle_index_of(entry->first) == ang) {
      const double w = entry->second;
      family.visit(entry->first, [&](int pos, int) { mask[pos] += w; });
      any = true;
      ++entry;
    }
    if (!any) continue;
    if (!directional[ang]) {
      throw std::invalid_argument("mix_and_reconstruct: missing interpolator for angle index " +
                                  std::to_string(ang));
    }
    const Image part = synth(mask);
    const Image up = directional[ang](part);
    const Image base = iso(part);
    if (!up.same_dims(out) || !base.same_dims(out)) {
      throw std::invalid_argument("mix_and_reconstruct: upsampler output dims mismatch");
    }
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += up.data()[i] - base.data()[i];
  }
  return clamp_output ? clamp01(std::move(out)) : out;
}

/// Text dump of a weight map: one line per block,
/// "id angle_index theta w h anchor_row anchor_col weight".
inline std::string dump_weights(const MixingWeights& weights, const BlockFamily& family) {
  std::string text = "# block_id angle_idx theta w h anchor_row anchor_col weight\n";
  char line[160];
  for (const auto& [id, w] : weights.entries) {
    const auto ref = family.decode(id);
    const auto& [bw, bh] = family.base()[ref.shape_idx];
    std::snprintf(line, sizeof(line), "%zu %d %.10g %d %d %d %d %.12g\n", id, ref.angle_idx,
                  family.angles()[ref.angle_idx], bw, bh, ref.anchor_row, ref.anchor_col, w);
    text += line;
  }
  return text;
}

}  // namespace shearsr
