#include "tvseg/level_set.hpp"

#include <cmath>
#include <stdexcept>

namespace tvseg {

BinaryMask threshold(const ScalarField& u, double s, bool strict) {
  BinaryMask mask(u.height, u.width);
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    const double v = u.values[k];
    mask.bits[k] = (strict ? v > s : v >= s) ? 1 : 0;
  }
  return mask;
}

std::vector<BinaryMask> alpha_sweep(const ScalarField& u, const std::vector<double>& alphas) {
  std::vector<BinaryMask> masks;
  masks.reserve(alphas.size());
  for (double a : alphas) masks.push_back(threshold(u, a, true));
  return masks;
}

bool alpha_near_level(const ScalarField& u, double alpha, double tol) {
  for (double v : u.values) {
    if (std::abs(v - alpha) <= tol) return true;
  }
  return false;
}

LevelMatch closest_level_set(const ScalarField& u, const BinaryMask& target,
                             const std::vector<double>& candidates) {
  require_same_shape(u, target, "closest_level_set");
  if (candidates.empty()) throw std::invalid_argument("closest_level_set: no candidate levels");

  LevelMatch best;
  bool have = false;
  for (double s : candidates) {
    BinaryMask mask = threshold(u, s, true);
    const long long d = symmetric_difference(mask, target);
    if (!have || d < best.distance || (d == best.distance && s < best.level)) {
      best = {s, std::move(mask), d};
      have = true;
    }
  }
  return best;
}

}  // namespace tvseg
