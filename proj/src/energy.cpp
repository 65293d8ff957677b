#include "tvseg/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "tvseg/grid_ops.hpp"

namespace tvseg {

double tv_weighted_aniso(const ScalarField& u, const WeightField& g) {
  require_same_shape(u, g.field(), "tv_weighted_aniso");
  const VectorField a = grad(u);
  const VectorField d = grad_rot(u);
  double total = 0.0;
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    const double gk = g.field().values[k];
    total += 0.5 * gk * (std::abs(a.x[k]) + std::abs(a.y[k]));
    total += 0.5 * gk * (std::abs(d.x[k]) + std::abs(d.y[k]));
  }
  return total;
}

double tv_manhattan(const ScalarField& u, const WeightField& g) {
  require_same_shape(u, g.field(), "tv_manhattan");
  const VectorField a = grad(u);
  double total = 0.0;
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    total += g.field().values[k] * (std::abs(a.x[k]) + std::abs(a.y[k]));
  }
  return total;
}

double tv_isotropic(const ScalarField& u, const WeightField& g) {
  require_same_shape(u, g.field(), "tv_isotropic");
  const VectorField a = grad(u);
  double total = 0.0;
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    total += g.field().values[k] * std::hypot(a.x[k], a.y[k]);
  }
  return total;
}

double shape_energy(const BinaryMask& theta, const ScalarField& f, const WeightField& g,
                    double alpha) {
  require_same_shape(f, theta, "shape_energy");
  require_same_shape(f, g.field(), "shape_energy");
  double data = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    if (theta.bits[k]) data += alpha - f.values[k];
  }
  return data + tv_weighted_aniso(theta.to_scalar(), g);
}

std::pair<double, double> coarea_check(const ScalarField& u, const WeightField& g,
                                       const std::vector<double>& levels) {
  require_same_shape(u, g.field(), "coarea_check");
  const double lhs = tv_weighted_aniso(u, g);

  std::set<double> distinct(u.values.begin(), u.values.end());
  const std::vector<double> values(distinct.begin(), distinct.end());
  if (values.size() <= 1) return {lhs, 0.0};
  if (levels.empty()) throw std::invalid_argument("coarea_check: no levels for non-constant field");

  double rhs = 0.0;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    const double lo = values[k], hi = values[k + 1];
    const double* level = nullptr;
    for (const double& t : levels) {
      if (t > lo && t < hi) {
        level = &t;
        break;
      }
    }
    if (!level) throw std::invalid_argument("coarea_check: missing level between consecutive values");

    ScalarField indicator(u.height, u.width);
    for (std::size_t p = 0; p < u.values.size(); ++p) {
      indicator.values[p] = u.values[p] > *level ? 1.0 : 0.0;
    }
    rhs += (hi - lo) * tv_weighted_aniso(indicator, g);
  }
  return {lhs, rhs};
}

std::pair<double, double> perimeter_ratio_bounds(int samples) {
  if (samples < 2) throw std::invalid_argument("perimeter_ratio_bounds: need at least 2 samples");
  const double two_pi = 8.0 * std::atan(1.0);
  const double quarter = two_pi / 8.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int k = 0; k < samples; ++k) {
    const double t = two_pi * k / samples;
    const double phi = 0.5 * (std::abs(std::cos(t)) + std::abs(std::sin(t)) +
                              std::abs(std::cos(t + quarter)) + std::abs(std::sin(t + quarter)));
    lo = std::min(lo, phi);
    hi = std::max(hi, phi);
  }
  return {lo, hi};
}

}  // namespace tvseg
