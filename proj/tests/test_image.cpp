// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 shearsr Contributors

#include <doctest.h>

#include <cmath>
#include <limits>

#include "shearsr/image.hpp"
#include "test_util.hpp"

using shearsr::Image;

TEST_CASE("load_pgm parses 8-bit P5") {
  const std::string path = testutil::temp_file("basic.pgm");
  testutil::write_bytes(path, std::string("P5\n2 2\n255\n") + '\x00' + '\xff' + '\x80' + '\x40');
  const Image img = shearsr::load_pgm(path);
  CHECK(img.rows() == 2);
  CHECK(img.cols() == 2);
  CHECK(img(0, 0) == 0.0);
  CHECK(img(0, 1) == 1.0);
  CHECK(img(1, 0) == doctest::Approx(128.0 / 255.0).epsilon(1e-12));
  CHECK(img(1, 1) == doctest::Approx(64.0 / 255.0).epsilon(1e-12));
}

TEST_CASE("load_pgm 1x1 and comments") {
  const std::string path = testutil::temp_file("one.pgm");
  testutil::write_bytes(path, std::string("P5\n# a comment\n1 1\n255\n") + '\xff');
  const Image img = shearsr::load_pgm(path);
  CHECK(img(0, 0) == 1.0);
}

TEST_CASE("load_pgm 16-bit big-endian") {
  const std::string path = testutil::temp_file("wide.pgm");
  // 0x8000 / 65535 and 0xFFFF / 65535
  testutil::write_bytes(path, std::string("P5\n2 1\n65535\n") + '\x80' + '\x00' + '\xff' + '\xff');
  const Image img = shearsr::load_pgm(path);
  CHECK(img(0, 0) == doctest::Approx(32768.0 / 65535.0).epsilon(1e-12));
  CHECK(img(0, 1) == 1.0);
}

TEST_CASE("load_pgm error classes are distinct") {
  const std::string ascii = testutil::temp_file("ascii.pgm");
  testutil::write_bytes(ascii, "P2\n2 2\n255\n0 1 2 3\n");
  CHECK_THROWS_WITH_AS(shearsr::load_pgm(ascii), doctest::Contains("unsupported magic"),
                       std::runtime_error);

  const std::string trunc = testutil::temp_file("trunc.pgm");
  testutil::write_bytes(trunc, std::string("P5\n2 2\n255\n") + '\x00' + '\x01');
  CHECK_THROWS_WITH_AS(shearsr::load_pgm(trunc), doctest::Contains("truncated"),
                       std::runtime_error);

  const std::string malformed = testutil::temp_file("malformed.pgm");
  testutil::write_bytes(malformed, "P5\ntwo 2\n255\nxxxx");
  CHECK_THROWS_WITH_AS(shearsr::load_pgm(malformed), doctest::Contains("malformed header"),
                       std::runtime_error);
}

TEST_CASE("save/load round trip within quantization") {
  const Image img = testutil::random_image(13, 9, 7);
  const std::string path = testutil::temp_file("roundtrip.pgm");
  shearsr::save_pgm(img, path);
  const Image back = shearsr::load_pgm(path);
  CHECK(shearsr::max_abs_diff(img, back) <= 1.0 / (2.0 * 255.0) + 1e-12);
}

TEST_CASE("save_pgm unwritable path") {
  CHECK_THROWS_WITH_AS(shearsr::save_pgm(Image(2, 2), "/nonexistent_dir_zz/x.pgm"),
                       doctest::Contains("unwritable"), std::runtime_error);
}

TEST_CASE("psnr basics") {
  const Image a(4, 6, 0.0);
  const Image b(4, 6, 1.0);
  CHECK(shearsr::psnr(a, a) == std::numeric_limits<double>::infinity());
  CHECK(shearsr::psnr(a, b) == doctest::Approx(0.0).epsilon(1e-12));

  Image c(4, 6, 0.3), d(4, 6, 0.4);  // uniform difference 0.1
  CHECK(shearsr::psnr(c, d) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(shearsr::psnr(d, c) == shearsr::psnr(c, d));

  // psnr(I, I+k) = -20 log10(k) for constant offsets
  Image e(8, 8, 0.25), f(8, 8, 0.25 + 0.125);
  CHECK(shearsr::psnr(e, f) == doctest::Approx(-20.0 * std::log10(0.125)).epsilon(1e-12));

  CHECK_THROWS_AS(shearsr::psnr(a, Image(3, 6)), std::invalid_argument);
}

TEST_CASE("gen_half_plane") {
  SUBCASE("slope 0 splits top/bottom") {
    const Image img = shearsr::gen_half_plane(4, 0.0);
    for (int c = 0; c < 4; ++c) {
      CHECK(img(0, c) == 1.0);
      CHECK(img(1, c) == 1.0);
      CHECK(img(2, c) == 0.0);
      CHECK(img(3, c) == 0.0);
    }
  }
  SUBCASE("huge slope approximates vertical edge") {
    const Image img = shearsr::gen_half_plane(4, 1e6);
    for (int r = 0; r < 4; ++r) {
      CHECK(img(r, 0) == 1.0);
      CHECK(img(r, 1) == 1.0);
      CHECK(img(r, 2) == 0.0);
      CHECK(img(r, 3) == 0.0);
    }
  }
  SUBCASE("binary with both values at 256, slope 5") {
    const Image img = shearsr::gen_half_plane(256, 5.0);
    int ones = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
      CHECK((img.data()[i] == 0.0 || img.data()[i] == 1.0));
      ones += img.data()[i] == 1.0;
    }
    CHECK(ones > 0);
    CHECK(ones < 256 * 256);
  }
  CHECK_THROWS_AS(shearsr::gen_half_plane(1, 0.0), std::invalid_argument);
}

TEST_CASE("gen_circle") {
  const Image img = shearsr::gen_circle(256, 0.3);
  double area = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    CHECK((img.data()[i] == 0.0 || img.data()[i] == 1.0));
    area += img.data()[i];
  }
  const double ideal = M_PI * 0.3 * 256 * 0.3 * 256;
  CHECK(std::abs(area - ideal) / ideal < 0.01);

  SUBCASE("quarter-turn symmetry") {
    for (int r = 0; r < 256; ++r) {
      for (int c = 0; c < 256; ++c) {
        CHECK(img(r, c) == img(c, 255 - r));
      }
    }
  }
  SUBCASE("vanishing radius leaves at most a few pixels") {
    const Image tiny = shearsr::gen_circle(64, 0.01);
    double n = 0.0;
    for (std::size_t i = 0; i < tiny.size(); ++i) n += tiny.data()[i];
    CHECK(n <= 4.0);
  }
  CHECK_THROWS_AS(shearsr::gen_circle(64, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(shearsr::gen_circle(64, 0.0), std::invalid_argument);
}

TEST_CASE("gen_parabola") {
  const Image img = shearsr::gen_parabola(64, 1.0 / 16.0);
  const double half = 63 / 2.0;
  SUBCASE("center columns follow the y_c > 0 rule") {
    // x_c = +-0.5 at the two middle columns; curvature * x_c^2 = 1/64.
    for (int r = 0; r < 64; ++r) {
      const double yc = half - r;
      CHECK(img(r, 31) == (yc > (1.0 / 16.0) * 0.25 ? 1.0 : 0.0));
    }
  }
  SUBCASE("even in x, binary values") {
    for (int r = 0; r < 64; ++r) {
      for (int c = 0; c < 32; ++c) CHECK(img(r, c) == img(r, 63 - c));
    }
    for (std::size_t i = 0; i < img.size(); ++i) {
      CHECK((img.data()[i] == 0.0 || img.data()[i] == 1.0));
    }
  }
  SUBCASE("doubling curvature shrinks the set") {
    const Image tighter = shearsr::gen_parabola(64, 2.0 / 16.0);
    for (std::size_t i = 0; i < img.size(); ++i) {
      if (tighter.data()[i] == 1.0) CHECK(img.data()[i] == 1.0);
    }
  }
  CHECK_THROWS_AS(shearsr::gen_parabola(64, 0.0), std::invalid_argument);
}
