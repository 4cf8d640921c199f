// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shearsr/blocks.hpp"
#include "shearsr/ffst.hpp"
#include "shearsr/image.hpp"
#include "shearsr/resample.hpp"
#include "shearsr/sme.hpp"
#include "shearsr/wavelet.hpp"

namespace shearsr {

/// Default mixing penalty. Dimensionless: both objective terms are quadratic
/// in the coefficients, so the solution is invariant under image rescaling.
inline constexpr double kDefaultLambda = 1.5;

struct SmeOptions {
  std::optional<double> lambda;  // absolute penalty; unset uses kDefaultLambda
  std::optional<int> scales;     // shearlet decomposition depth; unset uses the size default
  int sweeps = 10;
  std::optional<BlockConfig> blocks;
};

inline Image superresolve_bicubic(const Image& y) { return clamp01(bicubic_up2(y)); }

namespace detail {

inline Image sme_reconstruct(const Image& y, const CoeffMatrix& c, const BlockFamily& family,
                             const MaskedSynthesizer& synth, double lambda, int sweeps,
                             std::string* weights_dump) {
  SolveOptions sopt;
  sopt.max_sweeps = sweeps;
  const MixingWeights weights = solve_weights(c, family, lambda, sopt);
  if (weights_dump) *weights_dump = dump_weights(weights, family);

  std::vector<Upsampler> directional;
  directional.reserve(family.angle_count());
  for (double theta : family.angles()) {
    directional.push_back([theta](const Image& im) { return directional_up2(im, theta); });
  }
  return mix_and_reconstruct(y, weights, family, synth,
                             [](const Image& im) { return bicubic_up2(im); }, directional);
}

}  // namespace detail

/// SME superresolution over the finest shearlet scale: decompose, solve the
/// mixing weights over the oriented block family, then apply the mixed
/// directional interpolation. Coarser scales and the low pass ride through
/// the isotropic upsampler.
inline Image superresolve_sme_shearlet(const Image& y, const SmeOptions& opt = SmeOptions(),
                                       std::string* weights_dump = nullptr) {
  const int m = y.rows(), n = y.cols();
  const int scales = opt.scales.value_or(ShearletSystem::default_scales(m, n));
  const ShearletSystem sys(m, n, scales);
  const ShearletCoefficients coeffs = analyze(y, sys);
  const std::vector<int> fine = sys.scale_bands(scales - 1);

  CoeffMatrix c(m, n, static_cast<int>(fine.size()));
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const Image& plane = coeffs.planes[fine[i]];
    for (std::size_t p = 0; p < plane.size(); ++p) c.at(p, static_cast<int>(i)) = plane.data()[p];
  }

  const BlockFamily family(m, n, opt.blocks.value_or(BlockConfig()));
  MaskedSynthesizer synth = [&](const std::vector<double>& mask) {
    ShearletCoefficients masked;
    masked.rows = m;
    masked.cols = n;
    masked.bands = sys.bands();
    masked.planes.assign(sys.band_count(), Image(m, n, 0.0));
    for (std::size_t i = 0; i < fine.size(); ++i) {
      Image& plane = masked.planes[fine[i]];
      for (std::size_t p = 0; p < plane.size(); ++p) {
        plane.data()[p] = c.at(p, static_cast<int>(i)) * mask[p];
      }
    }
    return synthesize(masked, sys);
  };
  return detail::sme_reconstruct(y, c, family, synth, opt.lambda.value_or(kDefaultLambda),
                                 opt.sweeps, weights_dump);
}

/// Wavelet baseline: same mixing machinery over the three detail channels of
/// a one-level undecimated wavelet frame. A decimated carrier aliases
/// along-edge coefficient structure and defeats the directional regularizer,
/// so the shift-invariant variant backs this path.
inline Image superresolve_sme_wavelet(const Image& y, const SmeOptions& opt = SmeOptions(),
                                      std::string* weights_dump = nullptr) {
  const StationaryWavelet wc = swt2(y);
  const int m = y.rows(), n = y.cols();

  CoeffMatrix c(m, n, 3);
  const Image* channels[3] = {&wc.vertical, &wc.horizontal, &wc.diagonal};
  for (int ch = 0; ch < 3; ++ch) {
    for (std::size_t p = 0; p < channels[ch]->size(); ++p) c.at(p, ch) = channels[ch]->data()[p];
  }

  const BlockFamily family(m, n, opt.blocks.value_or(BlockConfig()));
  MaskedSynthesizer synth = [&](const std::vector<double>& mask) {
    StationaryWavelet masked;
    masked.approx = Image(m, n, 0.0);
    masked.vertical = Image(m, n);
    masked.horizontal = Image(m, n);
    masked.diagonal = Image(m, n);
    Image* out_planes[3] = {&masked.vertical, &masked.horizontal, &masked.diagonal};
    for (int ch = 0; ch < 3; ++ch) {
      for (std::size_t p = 0; p < out_planes[ch]->size(); ++p) {
        out_planes[ch]->data()[p] = c.at(p, ch) * mask[p];
      }
    }
    return iswt2(masked);
  };
  return detail::sme_reconstruct(y, c, family, synth, opt.lambda.value_or(kDefaultLambda),
                                 opt.sweeps, weights_dump);
}

}  // namespace shearsr
