#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "tvseg/energy.hpp"
#include "tvseg/level_set.hpp"
#include "tvseg/rof.hpp"

using namespace tvseg;
using namespace tvseg::test;

TEST_SUITE("level_set") {

TEST_CASE("thresholds outside the value range give trivial masks") {
  std::mt19937 rng(40);
  const ScalarField u = random_field(rng, 5, 6, 0.2, 0.9);
  CHECK(threshold(u, 0.0).count() == 30);
  CHECK(threshold(u, 1.5).count() == 0);
}

TEST_CASE("strict and non-strict thresholds differ exactly at the level") {
  ScalarField u(1, 4);
  u.values = {0.0, 0.5, 0.5, 1.0};
  const BinaryMask strict = threshold(u, 0.5, true);
  const BinaryMask loose = threshold(u, 0.5, false);
  CHECK(strict.bits == std::vector<std::uint8_t>{0, 0, 0, 1});
  CHECK(loose.bits == std::vector<std::uint8_t>{0, 1, 1, 1});
}

TEST_CASE("sweeping below the minimum fills the mask") {
  std::mt19937 rng(41);
  const ScalarField u = random_field(rng, 4, 4);
  const auto masks = alpha_sweep(u, {u.min_value() - 1.0});
  REQUIRE(masks.size() == 1);
  CHECK(masks[0].count() == 16);
}

TEST_CASE("sweeps produce nested masks") {
  std::mt19937 rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    const ScalarField u = random_field(rng, 9, 9);
    std::vector<double> alphas = {0.5, 0.6, 0.7, 0.8};
    for (int k = 0; k < 6; ++k)
      alphas.push_back(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    std::sort(alphas.begin(), alphas.end());
    const auto masks = alpha_sweep(u, alphas);
    for (std::size_t k = 0; k + 1 < masks.size(); ++k) CHECK(is_subset(masks[k + 1], masks[k]));
  }
}

TEST_CASE("closest level set recovers an exact member") {
  std::mt19937 rng(43);
  const ScalarField u = random_field(rng, 6, 6);
  const std::vector<double> candidates = {0.2, 0.4, 0.6, 0.8};
  const BinaryMask target = threshold(u, 0.6);
  const LevelMatch m = closest_level_set(u, target, candidates);
  CHECK(m.level == 0.6);
  CHECK(m.distance == 0);
  CHECK(m.mask == target);
}

TEST_CASE("an empty target matches the level above the maximum") {
  std::mt19937 rng(44);
  const ScalarField u = random_field(rng, 5, 5, 0.1, 0.9);
  const BinaryMask empty(5, 5, 0);
  const LevelMatch m = closest_level_set(u, empty, {0.5, u.max_value() + 1.0});
  CHECK(m.level == u.max_value() + 1.0);
  CHECK(m.distance == 0);
  CHECK(m.mask.count() == 0);
}

TEST_CASE("distance ties go to the smaller level") {
  ScalarField u(1, 2);
  u.values = {0.0, 1.0};
  BinaryMask target(1, 2, 1);
  // every candidate keeps only the right pixel, so all are one pixel away
  const LevelMatch m = closest_level_set(u, target, {0.75, 0.25, 0.5});
  CHECK(m.level == 0.25);
  CHECK(m.distance == 1);
}

TEST_CASE("closest level set agrees with a linear scan") {
  std::mt19937 rng(45);
  for (int rep = 0; rep < 20; ++rep) {
    const ScalarField u = random_field(rng, 5, 5);
    const BinaryMask target = random_mask(rng, 5, 5);
    std::vector<double> candidates;
    for (int k = 0; k < 7; ++k)
      candidates.push_back(std::uniform_real_distribution<double>(-0.1, 1.1)(rng));

    double best_level = candidates[0];
    long long best_distance = symmetric_difference(threshold(u, candidates[0]), target);
    for (double s : candidates) {
      const long long d = symmetric_difference(threshold(u, s), target);
      if (d < best_distance || (d == best_distance && s < best_level)) {
        best_distance = d;
        best_level = s;
      }
    }
    const LevelMatch m = closest_level_set(u, target, candidates);
    CHECK(m.level == best_level);
    CHECK(m.distance == best_distance);
  }
}

TEST_CASE("an empty candidate list is rejected") {
  const ScalarField u(2, 2, 0.0);
  CHECK_THROWS_AS(closest_level_set(u, BinaryMask(2, 2), {}), std::invalid_argument);
}

TEST_CASE("alpha near a field level is flagged") {
  ScalarField u(1, 3);
  u.values = {0.1, 0.5, 0.9};
  CHECK(alpha_near_level(u, 0.5));
  CHECK(alpha_near_level(u, 0.5004));
  CHECK(!alpha_near_level(u, 0.6));
}

TEST_CASE("both theorem solutions reach the brute-force minimum") {
  std::mt19937 rng(46);
  int checked = 0;
  while (checked < 10) {
    const ScalarField f = random_field(rng, 3, 3);
    const WeightField g = random_weights(rng, 3, 3, 0.1, 2.0);
    RofParams params;
    params.tau = 0.125;
    params.tol = 1e-9;
    params.max_iter = 100000;
    const RofResult r = rof_solve(f, g, params);
    REQUIRE(r.report.converged);

    std::uniform_real_distribution<double> pick(0.0, 1.0);
    double alpha = pick(rng);
    bool generic = false;
    for (int attempt = 0; attempt < 100 && !generic; ++attempt) {
      alpha = pick(rng);
      generic = !alpha_near_level(r.u, alpha);
    }
    if (!generic) continue;
    ++checked;

    const double best = brute_force_min(f, g, alpha).second;
    const double strict_energy = shape_energy(threshold(r.u, alpha, true), f, g, alpha);
    const double loose_energy = shape_energy(threshold(r.u, alpha, false), f, g, alpha);
    CHECK(std::abs(strict_energy - best) <= 1e-6);
    CHECK(std::abs(loose_energy - best) <= 1e-6);
  }
}

}  // TEST_SUITE
