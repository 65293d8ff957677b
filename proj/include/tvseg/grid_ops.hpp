#pragma once

#include "tvseg/field.hpp"

namespace tvseg {

/// Discrete differential operators on the pixel grid.
///
/// Forward differences with zero beyond the far boundary:
///   (grad u).x(i,j)     = u(i+1,j) - u(i,j)              for i < H-1, else 0
///   (grad u).y(i,j)     = u(i,j+1) - u(i,j)              for j < W-1, else 0
///   (grad_rot u).x(i,j) = (u(i+1,j+1) - u(i,j))/sqrt(2)  when in range, else 0
///   (grad_rot u).y(i,j) = (u(i-1,j+1) - u(i,j))/sqrt(2)  when in range, else 0
/// The 1/sqrt(2) diagonal scaling lives inside grad_rot so the anisotropic TV
/// can use one uniform 1/2 outer weight for both operator pairs.
///
/// divergence / divergence_rot are the exact negative adjoints:
///   <div p, w> = -<p, grad w>   and   <div' p, w> = -<p, grad' w>
/// for every p, w. The adjoint identity, not a printed closed form, defines
/// the boundary handling.

VectorField grad(const ScalarField& u);
VectorField grad_rot(const ScalarField& u);
ScalarField divergence(const VectorField& p);
ScalarField divergence_rot(const VectorField& p);

// In-place kernels for solver hot loops; `out` must already have the right
// shape. No validation.
void grad_into(const ScalarField& u, VectorField& out);
void grad_rot_into(const ScalarField& u, VectorField& out);
void divergence_into(const VectorField& p, ScalarField& out);
void divergence_rot_into(const VectorField& p, ScalarField& out);

struct NormEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Power-iteration estimate of the largest eigenvalue of
///   L w = -(1/2)(div(grad w) + div'(grad_rot w)),
/// i.e. the squared norm of the combined averaged divergence operator with
/// unit weights. Diagnostic: confirms the step-size bound's constant 8 is
/// conservative. Accepts 1x1 grids (all gradients vanish, estimate 0).
NormEstimate operator_norm_estimate(int h, int w);

}  // namespace tvseg
