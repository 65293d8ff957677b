#pragma once

#include <vector>

#include "tvseg/field.hpp"

namespace tvseg {

// mask = 1 where u > s (strict) or u >= s (non-strict). Both variants of a
// generic level minimize the same binary shape energy.
BinaryMask threshold(const ScalarField& u, double s, bool strict = true);

// One strict level-set mask per alpha. alpha1 < alpha2 implies
// mask(alpha2) is a subset of mask(alpha1).
std::vector<BinaryMask> alpha_sweep(const ScalarField& u, const std::vector<double>& alphas);

// True when alpha lies within tol of some value taken by u; at such levels the
// binary minimizer need not be unique, so callers should flag the result.
bool alpha_near_level(const ScalarField& u, double alpha, double tol = 1e-3);

struct LevelMatch {
  double level = 0.0;
  BinaryMask mask;
  long long distance = 0;  // symmetric-difference pixel count against the target
};

// Scans the candidate levels and returns the one whose strict level set is
// closest to the target in symmetric difference; ties go to the smaller level.
LevelMatch closest_level_set(const ScalarField& u, const BinaryMask& target,
                             const std::vector<double>& candidates);

}  // namespace tvseg
