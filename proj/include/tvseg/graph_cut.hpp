#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tvseg/field.hpp"

namespace tvseg {

struct TerminalCaps {
  double source = 0.0;  // capacity of the source -> node edge
  double sink = 0.0;    // capacity of the node -> sink edge
};

// Directed pair of capacities between two nodes: cap for from -> to,
// reverse_cap for to -> from.
struct Arc {
  int from = 0;
  int to = 0;
  double cap = 0.0;
  double reverse_cap = 0.0;
};

// s-t min-cut instance over pixel nodes. Convention throughout: a node on the
// source side of the cut carries label theta = 1. For problems produced by
// build_cut_problem, min energy = max flow + energy_offset.
struct CutProblem {
  int node_count = 0;
  std::vector<TerminalCaps> terminal_caps;
  std::vector<Arc> arcs;
  double energy_offset = 0.0;
};

// Pair weights between a pixel and its forward neighbors, anchored at the
// pixel whose g is used: axis neighbors get g_ij, diagonal neighbors
// (sqrt(2)/2) g_ij. The emitted arc capacities are half these values, matching
// the 1/2 factor in front of both sums of the energy.
struct NeighborWeights {
  ScalarField axis;
  ScalarField diagonal;
};

NeighborWeights neighbor_weights(const WeightField& g);

// Encodes sum (alpha - f_x) theta_x + sum w_xy |theta_y - theta_x| as a cut:
// node x gets source cap max(0, f_x - alpha) and sink cap max(0, alpha - f_x),
// each forward neighbor pair an arc with equal capacities both ways. Every
// pairwise term satisfies E(0,0) + E(1,1) <= E(0,1) + E(1,0), so the cut is
// exact. energy_offset = sum min(0, alpha - f_x).
CutProblem build_cut_problem(const ScalarField& f, const WeightField& g, double alpha);

struct MaxFlowResult {
  double flow = 0.0;
  // source_side[v] = 1 when v sits on the source side of the returned minimum
  // cut (the set of nodes reachable from the source in the final residual
  // graph, which is the canonical minimum cut).
  std::vector<std::uint8_t> source_side;
};

// Exact augmenting-path max flow with breadth-first search-tree reuse.
// Verifies internally that no augmenting path remains and that the capacity
// of the returned cut equals the flow value.
MaxFlowResult max_flow(const CutProblem& problem);

// Rounds every capacity to an integer multiple of 1/scale, stored scaled.
// With the default scale 2^20, all subsequent flow arithmetic is exact.
void scale_to_integer(CutProblem& problem, double scale = 1048576.0);

struct CutResult {
  BinaryMask mask;
  double energy = 0.0;
};

// Global minimizer of shape_energy(., f, g, alpha) by min cut. The reported
// energy is recomputed from the mask with the energy module, never taken from
// the flow value. With integer_scale, capacities are rounded per
// scale_to_integer first, which makes small-instance results bit-reproducible.
CutResult cut_segment(const ScalarField& f, const WeightField& g, double alpha,
                      bool integer_scale = false);

// Plain-text dump: "nodes arcs" header, one "source sink" line per node, then
// one "from to cap reverse_cap" line per arc.
void dump_cut_problem(const CutProblem& problem, std::ostream& out);

}  // namespace tvseg
