#pragma once

#include <utility>
#include <vector>

#include "tvseg/field.hpp"

namespace tvseg {

// Weighted anisotropic total variation mixing axis and 45-degree differences:
//   1/2 * sum g_ij * (|D^x u| + |D^y u|)  +  1/2 * sum g_ij * (|D^xy u| + |D^yx u|)
// where D^x, D^y are forward differences and D^xy, D^yx the rotated pair with
// the 1/sqrt(2) diagonal factor already included (see grid_ops).
double tv_weighted_aniso(const ScalarField& u, const WeightField& g);

// Axis-aligned weighted Manhattan TV: sum g_ij * (|D^x u| + |D^y u|), no 1/2,
// no diagonal terms.
double tv_manhattan(const ScalarField& u, const WeightField& g);

// Isotropic discrete TV, sum g_ij * sqrt((D^x u)^2 + (D^y u)^2).
// Diagnostic reference only: it does not decompose over level sets, so it is
// never used by the solvers.
double tv_isotropic(const ScalarField& u, const WeightField& g);

// Binary shape energy: sum (alpha - f_ij) * theta_ij + tv_weighted_aniso(theta, g).
double shape_energy(const BinaryMask& theta, const ScalarField& f, const WeightField& g,
                    double alpha);

// Threshold decomposition of the weighted anisotropic TV. lhs is the direct
// value; rhs rebuilds it from level-set indicators: for consecutive distinct
// values v_k < v_{k+1} of u, the caller supplies a level strictly between
// them, and rhs = sum (v_{k+1} - v_k) * tv(indicator(u > t_k), g).
// Throws if a gap between consecutive values has no matching level.
std::pair<double, double> coarea_check(const ScalarField& u, const WeightField& g,
                                       const std::vector<double>& levels);

// Ratio of the anisotropic pair measure to Euclidean length per unit normal:
// phi(t) = 1/2 * (|cos t| + |sin t| + |cos(t + pi/4)| + |sin(t + pi/4)|),
// sampled at `samples` angles uniform in [0, 2pi). The returned (min, max)
// bracket [(1+sqrt(2))/2, 1/sqrt(2-sqrt(2))].
std::pair<double, double> perimeter_ratio_bounds(int samples);

}  // namespace tvseg
