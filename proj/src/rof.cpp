#include "tvseg/rof.hpp"

#include <cassert>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "tvseg/energy.hpp"
#include "tvseg/grid_ops.hpp"

namespace tvseg {

namespace {

void validate(const RofParams& p) {
  if (!(p.lambda > 0.0)) throw std::invalid_argument("rof: lambda must be positive");
  if (!(p.tau > 0.0)) throw std::invalid_argument("rof: tau must be positive");
  if (p.tau > 0.125) {
    throw std::invalid_argument("rof: tau exceeds the stability bound 1/8 for normalized weights");
  }
  if (!(p.tol > 0.0)) throw std::invalid_argument("rof: tol must be positive");
  if (p.max_iter < 1) throw std::invalid_argument("rof: max_iter must be at least 1");
}

// xi_new = (xi + a) / (1 + |a|) keeps xi_new in [-1, 1] whenever xi is:
// |xi + a| <= 1 + |a| holds in exact arithmetic and rounding is monotone.
inline double dual_update(double xi, double a) { return (xi + a) / (1.0 + std::abs(a)); }

#ifndef NDEBUG
void assert_feasible(const VectorField& p) {
  for (double v : p.x) assert(std::abs(v) <= 1.0);
  for (double v : p.y) assert(std::abs(v) <= 1.0);
}
#endif

}  // namespace

std::pair<WeightField, double> normalize_weights(const WeightField& g, double lambda) {
  const double m = g.max();
  ScalarField scaled = g.field();
  for (double& v : scaled.values) v /= m;
  return {WeightField(std::move(scaled)), lambda * m};
}

double rof_primal_energy(const ScalarField& w, const ScalarField& w0, const WeightField& g,
                         double lambda) {
  require_same_shape(w, w0, "rof energy");
  double fidelity = 0.0;
  for (std::size_t k = 0; k < w.values.size(); ++k) {
    const double d = w.values[k] - w0.values[k];
    fidelity += d * d;
  }
  return tv_weighted_aniso(w, g) + fidelity / (2.0 * lambda);
}

RofResult rof_solve(const ScalarField& w0, const WeightField& g, const RofParams& params,
                    std::ostream* trace) {
  require_same_shape(w0, g.field(), "rof");
  require_finite(w0, "rof input");
  validate(params);

  const auto t0 = std::chrono::steady_clock::now();
  const int h = w0.height, w = w0.width;
  const std::size_t n = w0.values.size();

  auto [gt, lambda] = normalize_weights(g, params.lambda);
  const ScalarField& gn = gt.field();
  const double step = params.tau / lambda;
  const double residue_scale = params.normalized_residue ? 1.0 / std::sqrt(2.0 * n) : 1.0;

  DualFieldPair duals{VectorField(h, w), VectorField(h, w)};
  VectorField scaled_xi(h, w), scaled_eta(h, w);
  ScalarField wn(h, w), div_a(h, w), div_r(h, w);
  VectorField grad_w(h, w), grad_rw(h, w);

  auto compute_w = [&]() {
    for (std::size_t k = 0; k < n; ++k) {
      scaled_xi.x[k] = gn.values[k] * duals.xi.x[k];
      scaled_xi.y[k] = gn.values[k] * duals.xi.y[k];
      scaled_eta.x[k] = gn.values[k] * duals.eta.x[k];
      scaled_eta.y[k] = gn.values[k] * duals.eta.y[k];
    }
    divergence_into(scaled_xi, div_a);
    divergence_rot_into(scaled_eta, div_r);
    for (std::size_t k = 0; k < n; ++k) {
      wn.values[k] = 0.5 * lambda * (div_a.values[k] + div_r.values[k]) - w0.values[k];
    }
  };

  SolveReport report;
  report.residues.reserve(static_cast<std::size_t>(params.max_iter));
  double residue = 0.0;

  for (int iter = 1; iter <= params.max_iter; ++iter) {
    compute_w();
    grad_into(wn, grad_w);
    grad_rot_into(wn, grad_rw);

    double dxi2 = 0.0, deta2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double gk = gn.values[k] * step;
      const double nx = dual_update(duals.xi.x[k], gk * grad_w.x[k]);
      const double ny = dual_update(duals.xi.y[k], gk * grad_w.y[k]);
      const double nrx = dual_update(duals.eta.x[k], gk * grad_rw.x[k]);
      const double nry = dual_update(duals.eta.y[k], gk * grad_rw.y[k]);
      dxi2 += (nx - duals.xi.x[k]) * (nx - duals.xi.x[k]) +
              (ny - duals.xi.y[k]) * (ny - duals.xi.y[k]);
      deta2 += (nrx - duals.eta.x[k]) * (nrx - duals.eta.x[k]) +
               (nry - duals.eta.y[k]) * (nry - duals.eta.y[k]);
      duals.xi.x[k] = nx;
      duals.xi.y[k] = ny;
      duals.eta.x[k] = nrx;
      duals.eta.y[k] = nry;
    }
#ifndef NDEBUG
    assert_feasible(duals.xi);
    assert_feasible(duals.eta);
#endif
    residue = std::max(std::sqrt(dxi2), std::sqrt(deta2)) * residue_scale;
    report.residues.push_back(residue);
    report.iterations = iter;
    if (trace) {
      compute_w();
      ScalarField u(h, w);
      for (std::size_t k = 0; k < n; ++k) u.values[k] = -wn.values[k];
      (*trace) << iter << ',' << residue << ',' << rof_primal_energy(u, w0, g, params.lambda)
               << '\n';
    }
    if (residue < params.tol) {
      report.converged = true;
      break;
    }
  }
  report.final_residue = residue;

  compute_w();
  ScalarField u(h, w);
  for (std::size_t k = 0; k < n; ++k) u.values[k] = -wn.values[k];
  require_finite(u, "rof solution");

  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(u), std::move(duals), std::move(report)};
}

std::array<ScalarField, 4> kkt_multipliers(const DualFieldPair&, const ScalarField& w_res,
                                           const WeightField& g, double lambda) {
  require_same_shape(w_res, g.field(), "kkt_multipliers");
  const VectorField a = grad(w_res);
  const VectorField r = grad_rot(w_res);
  std::array<ScalarField, 4> out{
      ScalarField(w_res.height, w_res.width), ScalarField(w_res.height, w_res.width),
      ScalarField(w_res.height, w_res.width), ScalarField(w_res.height, w_res.width)};
  for (std::size_t k = 0; k < w_res.values.size(); ++k) {
    const double c = 0.5 * lambda * g.field().values[k];
    out[0].values[k] = c * std::abs(a.x[k]);
    out[1].values[k] = c * std::abs(a.y[k]);
    out[2].values[k] = c * std::abs(r.x[k]);
    out[3].values[k] = c * std::abs(r.y[k]);
  }
  return out;
}

}  // namespace tvseg
