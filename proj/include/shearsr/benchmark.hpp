// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "shearsr/superres.hpp"

namespace shearsr {

struct RunConfig {
  std::vector<std::string> inputs = {"plane", "circle", "parabola"};
  std::vector<std::string> methods = {"bicubic", "sme-wavelet", "sme-shearlet"};
  std::vector<std::string> degradations = {"ds"};
  std::optional<double> lambda;
  std::optional<int> scales;
  std::uint64_t seed = 0;
  int sweeps = 10;
  std::string out_dir;                    // empty: no files written
  std::optional<std::array<int, 4>> crop;  // x, y, w, h detail view
  bool dump_bands = false;
  bool dump_weights = false;
  std::optional<BlockConfig> blocks;
  int threads = 0;  // <= 0: SHEARSR_THREADS env var, else hardware concurrency
};

struct ReportRow {
  std::string image;
  std::string degradation;
  std::vector<std::pair<std::string, double>> psnr_db;  // per method
  bool ok = true;
  std::string error;
};

struct RunResult {
  std::vector<ReportRow> rows;
  bool any_failed = false;
};

/// Synthetic presets (256x256) or a PGM path.
inline Image load_input(const std::string& name) {
  if (name == "plane") return gen_half_plane(256, 5.0);
  if (name == "circle") return gen_circle(256, 0.3);
  if (name == "parabola") return gen_parabola(256, 1.0 / 64.0);
  return load_pgm(name);
}

namespace detail {

inline std::string sanitize_name(const std::string& s) {
  std::string base = std::filesystem::path(s).stem().string();
  if (base.empty()) base = s;
  for (char& c : base) {
    if (c == ':' ) c = '-';
    if (c == '/' || c == '\\' || c == ',') c = '_';
  }
  return base;
}

inline std::string format_psnr(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SHEARSR_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

inline Image crop_view(const Image& img, const std::array<int, 4>& rect) {
  const auto [x, y, w, h] = rect;
  if (x < 0 || y < 0 || w < 1 || h < 1 || x + w > img.cols() || y + h > img.rows()) {
    throw std::invalid_argument("crop: rectangle outside image");
  }
  Image out(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) out(r, c) = img(y + r, x + c);
  }
  return out;
}

inline void write_band_dump(const Image& y, int scales, const std::string& dir,
                            const std::string& prefix) {
  const ShearletSystem sys(y.rows(), y.cols(), scales);
  const ShearletCoefficients coeffs = analyze(y, sys);
  const int m = sys.rows(), n = sys.cols();
  for (int b = 0; b < sys.band_count(); ++b) {
    const BandInfo& info = sys.band(b);
    char tag[64];
    std::snprintf(tag, sizeof(tag), "band%02d_%s_j%d_k%d", b, cone_name(info.cone), info.scale,
                  info.shear);
    // Filter plane, DC shifted to the center for viewing.
    Image filt(m, n);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) {
        filt(r, c) = sys.filter(b)[static_cast<std::size_t>((r + (m + 1) / 2) % m) * n +
                                   (c + (n + 1) / 2) % n];
      }
    }
    save_pgm(filt, dir + "/" + prefix + "__" + tag + "_filter.pgm");
    // Coefficient magnitude, normalized to its own peak.
    const Image& plane = coeffs.planes[b];
    double peak = 0.0;
    for (std::size_t i = 0; i < plane.size(); ++i) peak = std::max(peak, std::abs(plane.data()[i]));
    Image mag(m, n);
    if (peak > 0.0) {
      for (std::size_t i = 0; i < plane.size(); ++i) mag.data()[i] = std::abs(plane.data()[i]) / peak;
    }
    save_pgm(mag, dir + "/" + prefix + "__" + tag + "_coef.pgm");
  }
}

}  // namespace detail

/// Runs the full degrade -> superresolve -> score protocol for every
/// (input, degradation) pair. Rows run in parallel (capped by SHEARSR_THREADS
/// or cfg.threads); every row derives its own noise stream from
/// (seed, image, degradation), so results do not depend on scheduling.
inline RunResult run_pipeline(const RunConfig& cfg) {
  RunResult result;
  struct Task {
    std::string input, degradation;
  };
  std::vector<Task> tasks;
  for (const auto& in : cfg.inputs) {
    for (const auto& d : cfg.degradations) tasks.push_back({in, d});
  }
  result.rows.resize(tasks.size());

  if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);

  auto run_row = [&](std::size_t t) {
    ReportRow& row = result.rows[t];
    row.image = detail::sanitize_name(tasks[t].input);
    row.degradation = tasks[t].degradation;
    try {
      const Image original = load_input(tasks[t].input);
      if (original.rows() % 2 != 0 || original.cols() % 2 != 0) {
        throw std::invalid_argument("input dimensions must be even");
      }
      DegradationSpec spec = parse_degradation(tasks[t].degradation);
      if (spec.noise) {
        // Per-row stream: all methods in a row share one degraded image.
        spec.noise_seed = shearsr::detail::splitmix64(
            shearsr::detail::splitmix64(cfg.seed) ^ shearsr::detail::fnv1a64(row.image) ^
            shearsr::detail::splitmix64(spec.noise_seed) ^ shearsr::detail::fnv1a64(spec.name));
      }
      const Image degraded = apply_degradation(original, spec);

      SmeOptions sme;
      sme.lambda = cfg.lambda;
      sme.scales = cfg.scales;
      sme.sweeps = cfg.sweeps;
      sme.blocks = cfg.blocks;

      const std::string stem = row.image + "__" + detail::sanitize_name(tasks[t].degradation);
      if (cfg.dump_bands && !cfg.out_dir.empty()) {
        const int scales = cfg.scales.value_or(
            ShearletSystem::default_scales(degraded.rows(), degraded.cols()));
        detail::write_band_dump(degraded, scales, cfg.out_dir, stem);
      }

      for (const auto& method : cfg.methods) {
        Image restored;
        std::string weights_text;
        std::string* dump = cfg.dump_weights ? &weights_text : nullptr;
        if (method == "bicubic") {
          restored = superresolve_bicubic(degraded);
        } else if (method == "sme-wavelet") {
          restored = superresolve_sme_wavelet(degraded, sme, dump);
        } else if (method == "sme-shearlet") {
          restored = superresolve_sme_shearlet(degraded, sme, dump);
        } else {
          throw std::invalid_argument("unknown method '" + method + "'");
        }
        row.psnr_db.emplace_back(method, psnr(original, restored));
        if (!cfg.out_dir.empty()) {
          save_pgm(restored, cfg.out_dir + "/" + stem + "__" + method + ".pgm");
          if (cfg.crop) {
            save_pgm(detail::crop_view(restored, *cfg.crop),
                     cfg.out_dir + "/" + stem + "__" + method + "__crop.pgm");
          }
          if (dump && !weights_text.empty()) {
            std::ofstream wf(cfg.out_dir + "/" + stem + "__" + method + "__weights.txt");
            wf << weights_text;
          }
        }
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  };

  const int threads = std::min<int>(detail::resolve_threads(cfg.threads),
                                    static_cast<int>(tasks.size()));
  if (threads <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run_row(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) run_row(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& row : result.rows) result.any_failed = result.any_failed || !row.ok;
  return result;
}

/// CSV report: image,degradation,method,psnr_db with rows sorted
/// lexicographically by (image, degradation, method).
inline std::string emit_report_csv(const std::vector<ReportRow>& rows) {
  struct Line {
    std::string image, degradation, method;
    double psnr;
  };
  std::vector<Line> lines;
  for (const auto& row : rows) {
    if (!row.ok) continue;
    for (const auto& [method, v] : row.psnr_db) lines.push_back({row.image, row.degradation, method, v});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return std::tie(a.image, a.degradation, a.method) < std::tie(b.image, b.degradation, b.method);
  });
  std::string text = "image,degradation,method,psnr_db\n";
  for (const auto& l : lines) {
    text += l.image + "," + l.degradation + "," + l.method + "," + detail::format_psnr(l.psnr) + "\n";
  }
  return text;
}

/// Human-readable table, one line per (image, degradation), method columns.
inline std::string emit_report_table(const std::vector<ReportRow>& rows) {
  std::vector<std::string> methods;
  for (const auto& row : rows) {
    for (const auto& [m, v] : row.psnr_db) {
      if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
    }
  }
  std::sort(methods.begin(), methods.end());

  std::vector<const ReportRow*> sorted;
  for (const auto& row : rows) sorted.push_back(&row);
  std::sort(sorted.begin(), sorted.end(), [](const ReportRow* a, const ReportRow* b) {
    return std::tie(a->image, a->degradation) < std::tie(b->image, b->degradation);
  });

  std::size_t w0 = 5, w1 = 11;
  for (const auto* row : sorted) {
    w0 = std::max(w0, row->image.size());
    w1 = std::max(w1, row->degradation.size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  std::string text = pad("image", w0 + 2) + pad("degradation", w1 + 2);
  for (const auto& m : methods) text += pad(m, std::max<std::size_t>(m.size(), 12) + 2);
  text += "\n";
  for (const auto* row : sorted) {
    text += pad(row->image, w0 + 2) + pad(row->degradation, w1 + 2);
    if (!row->ok) {
      text += "ERROR: " + row->error;
    } else {
      for (const auto& m : methods) {
        std::string cell = "-";
        for (const auto& [name, v] : row->psnr_db) {
          if (name == m) cell = detail::format_psnr(v);
        }
        text += pad(cell, std::max<std::size_t>(m.size(), 12) + 2);
      }
    }
    text += "\n";
  }
  return text;
}

}  // namespace shearsr
