#pragma once

#include <array>
#include <ostream>
#include <utility>
#include <vector>

#include "tvseg/field.hpp"

namespace tvseg {

// Box-constrained dual variables: every component entry lies in [-1, 1].
// xi pairs with the axis gradient, eta with the rotated one.
struct DualFieldPair {
  VectorField xi;
  VectorField eta;
};

struct RofParams {
  double lambda = 1.0;   // fidelity weight in tv + 1/(2*lambda) * ||w - w0||^2
  double tau = 0.1;      // dual step; must satisfy tau <= 1/8 after weight normalization
  double tol = 0.002;    // stop when the dual residue falls below this
  int max_iter = 2000;
  // Divide each residue norm by sqrt(#entries) so tol is resolution-independent.
  bool normalized_residue = false;
};

struct SolveReport {
  int iterations = 0;
  std::vector<double> residues;  // one entry per iteration, not necessarily monotone
  double final_residue = 0.0;
  bool converged = false;
  double wall_time = 0.0;  // seconds
};

struct RofResult {
  ScalarField u;
  DualFieldPair duals;
  SolveReport report;
};

// Minimizes tv_weighted_aniso(w, g) + 1/(2*lambda) * ||w - w0||^2 by the dual
// fixed-point iteration
//   w^n        = 1/2 * (lambda*div(g~ xi) + lambda*div_rot(g~ eta)) - w0
//   xi^{n+1,x} = (xi^{n,x} + g~ (tau/lambda) Dx w^n) / (1 + g~ (tau/lambda) |Dx w^n|)
// (and the three analogous component updates), stopping when
//   r = max(||xi^{n+1}-xi^n||_2, ||eta^{n+1}-eta^n||_2) < tol.
// Weights are normalized internally (g = g~ * max g, lambda <- lambda * max g),
// so the step bound is always tau <= 1/8. The returned u is -w^n, equivalently
// w0 - 1/2*(lambda*div(g xi) + lambda*div_rot(g eta)).
// If trace is non-null, writes one "iter,residue,primal_energy" line per
// iteration (energies in the caller's unnormalized g/lambda scale).
RofResult rof_solve(const ScalarField& w0, const WeightField& g, const RofParams& params,
                    std::ostream* trace = nullptr);

// g = g_tilde * max g; solving with (g_tilde, lambda * max g) is equivalent to
// (g, lambda). The returned g_tilde has max entry exactly 1.
std::pair<WeightField, double> normalize_weights(const WeightField& g, double lambda);

// Multipliers for the four box constraints at a dual point, evaluated on the
// residual field w_res = 1/2*(lambda*div(g xi) + lambda*div_rot(g eta)) - w0:
//   alpha1 = 1/2 * lambda * g * |Dx w_res|,  alpha2 analogously in y,
//   beta1/beta2 with the rotated differences. Diagnostic only; wherever a
//   multiplier is positive, the matching dual component sits on the boundary
//   (|.| = 1) at convergence.
std::array<ScalarField, 4> kkt_multipliers(const DualFieldPair& duals, const ScalarField& w_res,
                                           const WeightField& g, double lambda);

// Primal objective tv_weighted_aniso(w, g) + 1/(2*lambda) * ||w - w0||^2.
double rof_primal_energy(const ScalarField& w, const ScalarField& w0, const WeightField& g,
                         double lambda);

}  // namespace tvseg
