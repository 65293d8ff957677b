#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "generators.hpp"
#include "tvseg/acontrario.hpp"
#include "tvseg/level_set.hpp"

using namespace tvseg;
using namespace tvseg::test;

TEST_SUITE("acontrario") {

TEST_CASE("relative entropy vanishes exactly on the diagonal") {
  for (double y : {0.05, 0.25, 0.5, 0.75, 0.95}) CHECK(hoeffding_H(y, y) == 0.0);
}

TEST_CASE("relative entropy at the reference point") {
  const double h = hoeffding_H(0.9, 0.5);
  CHECK(h == doctest::Approx(0.36806420716849715).epsilon(1e-12));
  CHECK(std::abs(h - 0.368064) <= 1e-6);
}

TEST_CASE("relative entropy grows with x above y") {
  const double y = 0.3;
  double prev = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double x = y + (0.999 - y) * k / 100.0;
    const double h = hoeffding_H(x, y);
    CHECK(h > prev);
    prev = h;
  }
}

TEST_CASE("relative entropy rejects boundary arguments") {
  CHECK_THROWS_AS(hoeffding_H(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_H(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_H(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_H(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_H(-0.1, 0.5), std::invalid_argument);
}

TEST_CASE("rejection threshold at the reference image size") {
  CHECK(detection_threshold(65536, 49, 1.0) ==
        doctest::Approx(std::log(65536.0) / 49.0).epsilon(1e-15));
  CHECK(std::abs(detection_threshold(65536, 49, 1.0) - 0.226335) <= 2e-6);
}

TEST_CASE("degenerate detection inputs are rejected") {
  CHECK_THROWS_AS(detect(ScalarField(8, 8, 0.0), {}), std::invalid_argument);
  ScalarField negative(8, 8, 0.5);
  negative.at(0, 0) = -0.1;
  CHECK_THROWS_AS(detect(negative, {}), std::invalid_argument);
}

TEST_CASE("a constant field triggers nothing") {
  const DetectionResult r = detect(ScalarField(16, 16, 0.7), {});
  CHECK(r.mask.count() == 0);
  CHECK(r.mu_hat == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("window means and the mask obey the printed rule") {
  std::mt19937 rng(80);
  ScalarField field = random_field(rng, 24, 24, 0.0, 1.0);
  for (int i = 8; i < 14; ++i)
    for (int j = 8; j < 14; ++j) field.at(i, j) = 3.0;
  DetectionParams params;
  params.radius = 2;
  const DetectionResult r = detect(field, params);

  const int window = (2 * params.radius + 1) * (2 * params.radius + 1);
  const double bound = detection_threshold(24 * 24, window, params.epsilon);
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) {
      const double e = r.window_means.at(i, j);
      const bool want =
          e > r.mu_hat && e < 1.0 && hoeffding_H(e, r.mu_hat) >= bound;
      CHECK(r.mask.at(i, j) == (want ? 1 : 0));
    }
}

TEST_CASE("a planted bright block is detected and nothing far from it") {
  std::mt19937 rng(81);
  std::uniform_real_distribution<double> noise(0.0, 0.02);
  ScalarField field(32, 32);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      const bool inside = i >= 10 && i < 22 && j >= 10 && j < 22;
      field.at(i, j) = (inside ? 1.0 : 0.1) + noise(rng);
    }
  DetectionParams params;
  params.radius = 1;
  const DetectionResult r = detect(field, params);
  CHECK(r.mask.count() > 0);
  // nothing outside the block plus one window radius
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      const bool near_block = i >= 9 && i < 23 && j >= 9 && j < 23;
      if (!near_block) CHECK(r.mask.at(i, j) == 0);
    }
}

TEST_CASE("erosion basics") {
  std::mt19937 rng(82);
  const BinaryMask mask = random_mask(rng, 10, 10);
  CHECK(erode(mask, 0) == mask);

  const BinaryMask full(6, 6, 1);
  const BinaryMask shrunk = erode(full, 1);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const bool interior = i >= 1 && i < 5 && j >= 1 && j < 5;
      CHECK(shrunk.at(i, j) == (interior ? 1 : 0));
    }

  CHECK(erode(full, 3).count() == 0);
}

TEST_CASE("erosion equals the window minimum and shrinks its input") {
  std::mt19937 rng(83);
  for (int rep = 0; rep < 10; ++rep) {
    const BinaryMask mask = random_mask(rng, 9, 11, 0.8);
    for (int radius : {1, 2}) {
      const BinaryMask out = erode(mask, radius);
      CHECK(is_subset(out, mask));
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 11; ++j) {
          std::uint8_t want = 1;
          for (int di = -radius; di <= radius && want; ++di)
            for (int dj = -radius; dj <= radius && want; ++dj) {
              const int pi = i + di, pj = j + dj;
              if (pi < 0 || pi >= 9 || pj < 0 || pj >= 11 || !mask.at(pi, pj)) want = 0;
            }
          CHECK(out.at(i, j) == want);
        }
    }
  }
}

TEST_CASE("level candidates span every distinct level set") {
  ScalarField u(1, 4);
  u.values = {0.0, 1.0, 3.0, 1.0};
  const std::vector<double> c = level_candidates(u);
  REQUIRE(c.size() == 4);
  CHECK(c[0] == -1.0);
  CHECK(c[1] == 0.5);
  CHECK(c[2] == 2.0);
  CHECK(c[3] == 4.0);
}

TEST_CASE("a detected plateau matches its own level set") {
  std::mt19937 rng(84);
  std::uniform_real_distribution<double> noise(0.0, 0.02);
  ScalarField u(32, 32);
  ScalarField field(32, 32);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      const bool inside = i >= 10 && i < 22 && j >= 10 && j < 22;
      u.at(i, j) = inside ? 1.0 : 0.1;
      field.at(i, j) = u.at(i, j) + noise(rng);
    }
  DetectionParams params;
  params.radius = 1;
  const MatchResult m = detect_and_match(field, u, params);
  CHECK(m.level == doctest::Approx(0.55).epsilon(1e-12));
  CHECK(m.mask == threshold(u, 0.55));
}

TEST_CASE("an empty detection matches the empty level set") {
  const ScalarField field(16, 16, 0.7);
  const MatchResult m = detect_and_match(field, field, {});
  CHECK(m.mask.count() == 0);
  CHECK(m.distance == 0);
  CHECK(m.level == doctest::Approx(1.7).epsilon(1e-12));
}

}  // TEST_SUITE
