// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "shearsr/ffst.hpp"
#include "test_util.hpp"

using shearsr::Cone;
using shearsr::Image;
using shearsr::ShearletCoefficients;
using shearsr::ShearletSystem;

namespace {

double coeff_energy(const ShearletCoefficients& c) {
  double e = 0.0;
  for (const auto& plane : c.planes) e += testutil::energy(plane);
  return e;
}

double inner(const Image& a, const Image& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

}  // namespace

TEST_CASE("meyer_v boundary and symmetry") {
  CHECK(shearsr::meyer_v(-0.5) == 0.0);
  CHECK(shearsr::meyer_v(0.0) == 0.0);
  CHECK(shearsr::meyer_v(1.0) == 1.0);
  CHECK(shearsr::meyer_v(2.0) == 1.0);
  CHECK(shearsr::meyer_v(0.5) == doctest::Approx(0.5).epsilon(1e-15));

  // Independent evaluation through std::pow, plus the complementary identity.
  const double x = 0.25;
  const double direct = 35.0 * std::pow(x, 4) - 84.0 * std::pow(x, 5) + 70.0 * std::pow(x, 6) -
                        20.0 * std::pow(x, 7);
  CHECK(shearsr::meyer_v(x) == doctest::Approx(direct).epsilon(1e-14));
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    CHECK(shearsr::meyer_v(t) + shearsr::meyer_v(1.0 - t) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("meyer_b values and partition") {
  CHECK(shearsr::meyer_b(1.0) == doctest::Approx(0.0));
  CHECK(shearsr::meyer_b(4.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(shearsr::meyer_b(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(shearsr::meyer_b(0.5) == 0.0);
  CHECK(shearsr::meyer_b(5.0) == 0.0);
  for (int i = 0; i <= 1000; ++i) {
    const double w = 1.0 + i / 1000.0;
    const double b1 = shearsr::meyer_b(w), b2 = shearsr::meyer_b(2.0 * w);
    CHECK(b1 * b1 + b2 * b2 == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("psi1_hat support and dyadic partition") {
  CHECK(shearsr::psi1_hat(1.0) == doctest::Approx(1.0));
  CHECK(shearsr::psi1_hat(0.4) == 0.0);
  CHECK(shearsr::psi1_hat(-0.4) == 0.0);
  CHECK(shearsr::psi1_hat(4.5) == 0.0);
  for (int i = 1; i <= 100; ++i) {
    const double w = 1.0 + 3.0 * i / 100.0;  // (1, 4]
    double sum = 0.0;
    for (int j = 0; j <= 8; ++j) {
      const double v = shearsr::psi1_hat(std::ldexp(w, -2 * j));
      sum += v * v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("psi2_hat support, evenness, shift partition") {
  CHECK(shearsr::psi2_hat(0.0) == 1.0);
  CHECK(shearsr::psi2_hat(1.0) == 0.0);
  CHECK(shearsr::psi2_hat(-1.0) == 0.0);
  for (int i = 0; i <= 100; ++i) {
    const double x = -1.0 + 2.0 * i / 100.0;
    CHECK(shearsr::psi2_hat(x) == shearsr::psi2_hat(-x));
    double sum = 0.0;
    for (int k = -1; k <= 1; ++k) {
      const double v = shearsr::psi2_hat(k + x);
      sum += v * v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("phi_hat branches") {
  CHECK(shearsr::phi_hat(0.0, 0.0) == 1.0);
  CHECK(shearsr::phi_hat(0.5, 0.3) == 1.0);
  CHECK(shearsr::phi_hat(1.5, 0.0) == 0.0);
  CHECK(shearsr::phi_hat(0.75, 0.2) ==
        doctest::Approx(std::cos(M_PI / 2.0 * shearsr::meyer_v(0.5))).epsilon(1e-15));
  CHECK(shearsr::phi_hat(0.2, 0.75) == shearsr::phi_hat(0.75, 0.2));
}

TEST_CASE("build_system band table and tightness") {
  const ShearletSystem sys(64, 64, 3);
  // 1 + sum_j (2 (2^{j+1} - 1) + 2)
  int expected = 1;
  for (int j = 0; j < 3; ++j) expected += 2 * ((2 << j) - 1) + 2;
  CHECK(sys.band_count() == expected);
  CHECK(sys.band_count() == 29);
  CHECK(sys.band(0).cone == Cone::lowpass);

  CHECK(sys.max_tightness_deviation() <= 1e-12);

  SUBCASE("filter values live in [0,1]") {
    for (int b = 0; b < sys.band_count(); ++b) {
      for (double v : sys.filter(b)) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
  SUBCASE("scale band listing") {
    const auto fine = sys.scale_bands(2);
    CHECK(fine.size() == 2 * (8 - 1) + 2);
  }
  CHECK_THROWS_AS(ShearletSystem(64, 64, 0), std::invalid_argument);
  CHECK_THROWS_AS(ShearletSystem(64, 64, 7), std::invalid_argument);
  CHECK(ShearletSystem::default_scales(256, 256) == 4);
  CHECK(ShearletSystem::default_scales(128, 128) == 3);
}

TEST_CASE("analyze: constant image hits only the low pass") {
  const ShearletSystem sys(32, 32, 2);
  const Image img(32, 32, 0.6);
  const ShearletCoefficients c = shearsr::analyze(img, sys);
  CHECK(shearsr::max_abs_diff(c.planes[0], img) < 1e-12);
  for (int b = 1; b < sys.band_count(); ++b) {
    for (std::size_t i = 0; i < c.planes[b].size(); ++i) {
      CHECK(std::abs(c.planes[b].data()[i]) < 1e-12);
    }
  }
}

TEST_CASE("analyze: Parseval energy and linearity") {
  const ShearletSystem sys(64, 64, 3);
  const Image x = testutil::random_image(64, 64, 11);
  const Image y = testutil::random_image(64, 64, 12);
  const ShearletCoefficients cx = shearsr::analyze(x, sys);
  CHECK(coeff_energy(cx) == doctest::Approx(testutil::energy(x)).epsilon(1e-8));

  Image z(64, 64);
  for (std::size_t i = 0; i < z.size(); ++i) z.data()[i] = x.data()[i] + y.data()[i];
  const ShearletCoefficients cy = shearsr::analyze(y, sys);
  const ShearletCoefficients cz = shearsr::analyze(z, sys);
  for (int b = 0; b < sys.band_count(); ++b) {
    for (std::size_t i = 0; i < cz.planes[b].size(); ++i) {
      CHECK(std::abs(cz.planes[b].data()[i] - cx.planes[b].data()[i] - cy.planes[b].data()[i]) <
            1e-12);
    }
  }
}

TEST_CASE("perfect reconstruction, including odd dims") {
  for (auto [m, n, j] : {std::tuple{64, 64, 3}, std::tuple{17, 23, 2}, std::tuple{32, 48, 2}}) {
    const ShearletSystem sys(m, n, j);
    CHECK(sys.max_tightness_deviation() <= 1e-12);
    const Image x = testutil::random_image(m, n, 31 + m);
    const Image back = shearsr::synthesize(shearsr::analyze(x, sys), sys);
    CAPTURE(m);
    CAPTURE(n);
    CHECK(shearsr::max_abs_diff(back, x) <= 1e-10);
  }
}

TEST_CASE("synthesize: zero coefficients give zero image") {
  const ShearletSystem sys(16, 16, 1);
  ShearletCoefficients c;
  c.rows = 16;
  c.cols = 16;
  c.bands = sys.bands();
  c.planes.assign(sys.band_count(), Image(16, 16, 0.0));
  const Image out = shearsr::synthesize(c, sys);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out.data()[i] == 0.0);
}

TEST_CASE("masking all but the low pass keeps constants") {
  const ShearletSystem sys(32, 32, 2);
  const Image img(32, 32, 0.25);
  ShearletCoefficients c = shearsr::analyze(img, sys);
  for (int b = 1; b < sys.band_count(); ++b) c.planes[b] = Image(32, 32, 0.0);
  const Image out = shearsr::synthesize(c, sys);
  CHECK(shearsr::max_abs_diff(out, img) < 1e-10);
}

TEST_CASE("analysis and synthesis are adjoint") {
  const ShearletSystem sys(24, 24, 2);
  const Image x = testutil::random_image(24, 24, 3);
  ShearletCoefficients c;
  c.rows = 24;
  c.cols = 24;
  c.bands = sys.bands();
  for (int b = 0; b < sys.band_count(); ++b) {
    c.planes.push_back(testutil::random_image(24, 24, 50 + b, -1.0, 1.0));
  }
  const ShearletCoefficients ax = shearsr::analyze(x, sys);
  double lhs = 0.0;
  for (int b = 0; b < sys.band_count(); ++b) lhs += inner(ax.planes[b], c.planes[b]);
  const double rhs = inner(x, shearsr::synthesize(c, sys));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("detect_slope on half planes") {
  SUBCASE("axis-aligned edge, slope 0") {
    const ShearletSystem sys(128, 128, 3);
    const ShearletCoefficients c = shearsr::analyze(shearsr::gen_half_plane(128, 0.0), sys);
    // Interior point on the edge row.
    const auto det = shearsr::detect_slope(c, 2, 64, 64);
    CHECK(det.shear == 0);
    CHECK(det.slope == 0.0);
  }

  SUBCASE("slope 0.3 at scale 2 picks s=0.25 and neighbors") {
    const ShearletSystem sys(256, 256, ShearletSystem::default_scales(256, 256));
    const Image img = shearsr::gen_half_plane(256, 0.3);
    const ShearletCoefficients c = shearsr::analyze(img, sys);
    // Pixel on the edge: y_c = 0.3 x_c; x_c = 20 -> col 147, y_c = 6 -> row 121.5 -> 121.
    const auto det = shearsr::detect_slope(c, 2, 121, 147);
    CHECK(det.cone == Cone::vertical);
    CHECK(det.shear == 1);
    CHECK(det.slope == doctest::Approx(0.25));

    // The two strongest vertical-cone shears at that position are consecutive
    // and dominate every other band. (The continuous theory gives exactly two
    // nonzero bands; the binary staircase leaks a small amount everywhere.)
    std::vector<std::pair<double, int>> mags;
    for (int b = 0; b < static_cast<int>(c.bands.size()); ++b) {
      const auto& info = c.bands[b];
      if (info.scale != 2 || info.cone == Cone::lowpass) continue;
      if (info.cone == Cone::horizontal) continue;
      mags.emplace_back(std::abs(c.planes[b](121, 147)), info.shear);
    }
    std::sort(mags.rbegin(), mags.rend());
    CHECK(std::abs(mags[0].second - mags[1].second) == 1);
    CHECK(mags[1].first >= 2.0 * mags[2].first);
  }

  SUBCASE("steep slope 5 reports the reciprocal in the horizontal cone") {
    const ShearletSystem sys(256, 256, 4);
    const Image img = shearsr::gen_half_plane(256, 5.0);
    const ShearletCoefficients c = shearsr::analyze(img, sys);
    // Pixel on the edge: x_c = 4 -> col 131, y_c = 20 -> row 107.5 -> 107.
    const int j = 3;
    const auto det = shearsr::detect_slope(c, j, 107, 131);
    CHECK(det.cone == Cone::horizontal);
    CHECK(std::abs(det.slope - 0.2) < 2.0 * std::ldexp(1.0, -j));
  }

  SUBCASE("all-zero coefficients fall back to the tie rule") {
    const ShearletSystem sys(16, 16, 1);
    ShearletCoefficients c;
    c.rows = 16;
    c.cols = 16;
    c.bands = sys.bands();
    c.planes.assign(sys.band_count(), Image(16, 16, 0.0));
    const auto det = shearsr::detect_slope(c, 0, 8, 8);
    CHECK(det.shear == 0);
    CHECK(det.cone == Cone::horizontal);
  }
}
