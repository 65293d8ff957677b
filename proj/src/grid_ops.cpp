#include "tvseg/grid_ops.hpp"

#include <cmath>
#include <cstdint>

namespace tvseg {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

void grad_into(const ScalarField& u, VectorField& out) {
  const int h = u.height, w = u.width;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const std::size_t k = u.index(i, j);
      out.x[k] = (i < h - 1) ? u.values[k + static_cast<std::size_t>(w)] - u.values[k] : 0.0;
      out.y[k] = (j < w - 1) ? u.values[k + 1] - u.values[k] : 0.0;
    }
  }
}

void grad_rot_into(const ScalarField& u, VectorField& out) {
  const int h = u.height, w = u.width;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const std::size_t k = u.index(i, j);
      out.x[k] = (i < h - 1 && j < w - 1) ? (u.at(i + 1, j + 1) - u.values[k]) * kInvSqrt2 : 0.0;
      out.y[k] = (i > 0 && j < w - 1) ? (u.at(i - 1, j + 1) - u.values[k]) * kInvSqrt2 : 0.0;
    }
  }
}

void divergence_into(const VectorField& p, ScalarField& out) {
  const int h = p.height, w = p.width;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const std::size_t k = p.index(i, j);
      double d = 0.0;
      if (i < h - 1) d += p.x[k];
      if (i > 0) d -= p.x[k - static_cast<std::size_t>(w)];
      if (j < w - 1) d += p.y[k];
      if (j > 0) d -= p.y[k - 1];
      out.values[k] = d;
    }
  }
}

void divergence_rot_into(const VectorField& p, ScalarField& out) {
  const int h = p.height, w = p.width;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const std::size_t k = p.index(i, j);
      double d = 0.0;
      // transpose of the grad_rot index pattern, component by component
      if (i < h - 1 && j < w - 1) d += p.x[k];
      if (i > 0 && j > 0) d -= p.x[p.index(i - 1, j - 1)];
      if (i > 0 && j < w - 1) d += p.y[k];
      if (i < h - 1 && j > 0) d -= p.y[p.index(i + 1, j - 1)];
      out.values[k] = d * kInvSqrt2;
    }
  }
}

VectorField grad(const ScalarField& u) {
  VectorField out(u.height, u.width);
  grad_into(u, out);
  return out;
}

VectorField grad_rot(const ScalarField& u) {
  VectorField out(u.height, u.width);
  grad_rot_into(u, out);
  return out;
}

ScalarField divergence(const VectorField& p) {
  ScalarField out(p.height, p.width);
  divergence_into(p, out);
  return out;
}

ScalarField divergence_rot(const VectorField& p) {
  ScalarField out(p.height, p.width);
  divergence_rot_into(p, out);
  return out;
}

NormEstimate operator_norm_estimate(int h, int w) {
  if (h < 1 || w < 1) throw std::invalid_argument("operator_norm_estimate: dimensions must be positive");

  ScalarField v(h, w);
  // deterministic start vector with broad spectral overlap
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (double& e : v.values) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    e = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
  }

  VectorField p(h, w), q(h, w);
  ScalarField lv(h, w), lv2(h, w);

  auto apply = [&](const ScalarField& in, ScalarField& out) {
    grad_into(in, p);
    grad_rot_into(in, q);
    divergence_into(p, out);
    divergence_rot_into(q, lv2);
    for (std::size_t k = 0; k < out.values.size(); ++k) {
      out.values[k] = -0.5 * (out.values[k] + lv2.values[k]);
    }
  };

  const int max_iter = 20000;
  double lambda = 0.0;
  for (int n = 1; n <= max_iter; ++n) {
    apply(v, lv);
    double norm2 = 0.0, rayleigh = 0.0;
    for (std::size_t k = 0; k < lv.values.size(); ++k) {
      norm2 += lv.values[k] * lv.values[k];
      rayleigh += v.values[k] * lv.values[k];
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) return {0.0, n, true};
    const double prev = lambda;
    lambda = rayleigh;  // v is kept unit norm, so <v, Lv> is the Rayleigh quotient
    for (std::size_t k = 0; k < lv.values.size(); ++k) v.values[k] = lv.values[k] / norm;
    if (n > 1 && std::abs(lambda - prev) <= 1e-13 * std::max(1.0, std::abs(lambda))) {
      return {lambda, n, true};
    }
  }
  return {lambda, max_iter, false};
}

}  // namespace tvseg
