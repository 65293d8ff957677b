#include "tvseg/graph_cut.hpp"

#include <cmath>
#include <deque>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "tvseg/energy.hpp"

namespace tvseg {

namespace {

constexpr double kHalfSqrt2 = 0.7071067811865475244;

void validate(const CutProblem& p) {
  if (p.node_count < 0) throw std::invalid_argument("cut problem: negative node count");
  if (p.terminal_caps.size() != static_cast<std::size_t>(p.node_count)) {
    throw std::invalid_argument("cut problem: terminal cap count mismatch");
  }
  for (const TerminalCaps& t : p.terminal_caps) {
    if (!(t.source >= 0.0) || !(t.sink >= 0.0) || !std::isfinite(t.source) ||
        !std::isfinite(t.sink)) {
      throw std::invalid_argument("cut problem: terminal capacities must be finite and nonnegative");
    }
  }
  for (const Arc& a : p.arcs) {
    if (a.from < 0 || a.from >= p.node_count || a.to < 0 || a.to >= p.node_count) {
      throw std::invalid_argument("cut problem: arc endpoint out of range");
    }
    if (a.from == a.to) throw std::invalid_argument("cut problem: self loop");
    if (!(a.cap >= 0.0) || !(a.reverse_cap >= 0.0) || !std::isfinite(a.cap) ||
        !std::isfinite(a.reverse_cap)) {
      throw std::invalid_argument("cut problem: arc capacities must be finite and nonnegative");
    }
  }
}

// Search-tree solver state. Half-edges are stored in sibling pairs, so the
// reverse of edge e is e^1. parent[] holds the half-edge carrying flow toward
// the node for source-tree members and away from it for sink-tree members.
struct FlowSolver {
  struct HalfEdge {
    int to = 0;
    int next = -1;
    double cap = 0.0;
  };

  static constexpr int kNone = -1;
  static constexpr int kTerminal = -2;
  enum class Tree : std::uint8_t { free = 0, source, sink };

  std::vector<HalfEdge> edges;
  std::vector<int> first;
  std::vector<double> tr;  // folded terminal residual: >0 source excess, <0 sink
  std::vector<int> parent;
  std::vector<Tree> label;
  std::vector<std::uint8_t> in_active;
  std::deque<int> active;
  std::deque<int> orphans;
  double flow = 0.0;
  long long augmentations = 0;

  explicit FlowSolver(const CutProblem& p)
      : first(static_cast<std::size_t>(p.node_count), kNone),
        tr(static_cast<std::size_t>(p.node_count), 0.0),
        parent(static_cast<std::size_t>(p.node_count), kNone),
        label(static_cast<std::size_t>(p.node_count), Tree::free),
        in_active(static_cast<std::size_t>(p.node_count), 0) {
    edges.reserve(2 * p.arcs.size());
    for (const Arc& a : p.arcs) {
      edges.push_back({a.to, first[a.from], a.cap});
      first[a.from] = static_cast<int>(edges.size()) - 1;
      edges.push_back({a.from, first[a.to], a.reverse_cap});
      first[a.to] = static_cast<int>(edges.size()) - 1;
    }
    for (int v = 0; v < p.node_count; ++v) {
      const TerminalCaps& t = p.terminal_caps[static_cast<std::size_t>(v)];
      flow += std::min(t.source, t.sink);
      tr[v] = t.source - t.sink;
      if (tr[v] > 0.0) {
        label[v] = Tree::source;
        parent[v] = kTerminal;
        activate(v);
      } else if (tr[v] < 0.0) {
        label[v] = Tree::sink;
        parent[v] = kTerminal;
        activate(v);
      }
    }
  }

  void activate(int v) {
    if (!in_active[v]) {
      in_active[v] = 1;
      active.push_back(v);
    }
  }

  int parent_node(int v) const {
    const int e = parent[v];
    // source tree stores parent->v, sink tree stores v->parent
    return label[v] == Tree::source ? edges[e ^ 1].to : edges[e].to;
  }

  bool rooted(int v) const {
    while (true) {
      const int e = parent[v];
      if (e == kTerminal) return true;
      if (e == kNone) return false;
      v = parent_node(v);
    }
  }

  void make_orphan(int v) {
    parent[v] = kNone;
    orphans.push_back(v);
  }

  // connecting: half-edge from a source-tree node into a sink-tree node.
  // Roots are captured before any push, because saturations along the path
  // clear parent pointers.
  void augment(int connecting) {
    ++augmentations;
    double bottleneck = edges[connecting].cap;
    int root_s = edges[connecting ^ 1].to;
    while (parent[root_s] != kTerminal) {
      bottleneck = std::min(bottleneck, edges[parent[root_s]].cap);
      root_s = parent_node(root_s);
    }
    bottleneck = std::min(bottleneck, tr[root_s]);
    int root_t = edges[connecting].to;
    while (parent[root_t] != kTerminal) {
      bottleneck = std::min(bottleneck, edges[parent[root_t]].cap);
      root_t = parent_node(root_t);
    }
    bottleneck = std::min(bottleneck, -tr[root_t]);

    edges[connecting].cap -= bottleneck;
    edges[connecting ^ 1].cap += bottleneck;
    for (int v = edges[connecting ^ 1].to; parent[v] != kTerminal;) {
      const int e = parent[v];
      const int next = parent_node(v);
      edges[e].cap -= bottleneck;
      edges[e ^ 1].cap += bottleneck;
      if (edges[e].cap == 0.0) make_orphan(v);
      v = next;
    }
    for (int v = edges[connecting].to; parent[v] != kTerminal;) {
      const int e = parent[v];
      const int next = parent_node(v);
      edges[e].cap -= bottleneck;
      edges[e ^ 1].cap += bottleneck;
      if (edges[e].cap == 0.0) make_orphan(v);
      v = next;
    }
    tr[root_s] -= bottleneck;
    if (tr[root_s] == 0.0) make_orphan(root_s);
    tr[root_t] += bottleneck;
    if (tr[root_t] == 0.0) make_orphan(root_t);
    flow += bottleneck;
  }

  void adopt() {
    while (!orphans.empty()) {
      const int x = orphans.front();
      orphans.pop_front();
      const Tree side = label[x];

      bool adopted = false;
      for (int e = first[x]; e != kNone; e = edges[e].next) {
        const int q = edges[e].to;
        if (label[q] != side) continue;
        // candidate parent edge in flow direction
        const int pe = side == Tree::source ? (e ^ 1) : e;
        if (edges[pe].cap <= 0.0) continue;
        if (!rooted(q)) continue;
        parent[x] = pe;
        adopted = true;
        break;
      }
      if (adopted) continue;

      for (int e = first[x]; e != kNone; e = edges[e].next) {
        const int q = edges[e].to;
        if (label[q] != side) continue;
        const int toward_x = side == Tree::source ? (e ^ 1) : e;
        if (edges[toward_x].cap > 0.0) activate(q);
        if (parent[q] != kNone && parent[q] != kTerminal && parent_node(q) == x) {
          make_orphan(q);
        }
      }
      label[x] = Tree::free;
    }
  }

  void run(long long augment_limit) {
    while (!active.empty()) {
      const int p = active.front();
      active.pop_front();
      in_active[p] = 0;
      if (label[p] == Tree::free) continue;

      int e = first[p];
      while (e != kNone) {
        if (label[p] == Tree::free) break;
        const Tree side = label[p];
        // the half-edge that carries flow away from the source through this
        // pair: p->q when p grows the source tree, q->p when the sink tree
        const int outgoing = side == Tree::source ? e : (e ^ 1);
        if (edges[outgoing].cap > 0.0) {
          const int q = edges[e].to;
          if (label[q] == Tree::free) {
            label[q] = side;
            parent[q] = outgoing;
            activate(q);
          } else if (label[q] != side) {
            augment(outgoing);
            if (augmentations > augment_limit) {
              throw numerical_error("max_flow: augmentation budget exhausted");
            }
            adopt();
            // the connecting edge may keep residual capacity when the
            // bottleneck sat elsewhere; re-examine it before moving on
            continue;
          }
        }
        e = edges[e].next;
      }
    }
  }
};

}  // namespace

NeighborWeights neighbor_weights(const WeightField& g) {
  NeighborWeights nw{g.field(), g.field()};
  for (double& v : nw.diagonal.values) v *= kHalfSqrt2;
  return nw;
}

CutProblem build_cut_problem(const ScalarField& f, const WeightField& g, double alpha) {
  require_same_shape(f, g.field(), "build_cut_problem");
  require_finite(f, "cut data term");
  const int h = f.height, w = f.width;

  CutProblem p;
  p.node_count = h * w;
  p.terminal_caps.resize(static_cast<std::size_t>(p.node_count));
  const NeighborWeights nw = neighbor_weights(g);

  for (int k = 0; k < p.node_count; ++k) {
    const double d = alpha - f.values[static_cast<std::size_t>(k)];
    if (d >= 0.0) {
      p.terminal_caps[static_cast<std::size_t>(k)] = {0.0, d};
    } else {
      p.terminal_caps[static_cast<std::size_t>(k)] = {-d, 0.0};
      p.energy_offset += d;
    }
  }

  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const int k = i * w + j;
      const double ax = 0.5 * nw.axis.at(i, j);
      const double di = 0.5 * nw.diagonal.at(i, j);
      if (i + 1 < h) p.arcs.push_back({k, k + w, ax, ax});
      if (j + 1 < w) p.arcs.push_back({k, k + 1, ax, ax});
      if (i + 1 < h && j + 1 < w) p.arcs.push_back({k, k + w + 1, di, di});
      if (i > 0 && j + 1 < w) p.arcs.push_back({k, k - w + 1, di, di});
    }
  }
  return p;
}

MaxFlowResult max_flow(const CutProblem& problem) {
  validate(problem);
  FlowSolver solver(problem);
  const long long limit =
      1000 + 200 * (static_cast<long long>(problem.node_count) +
                    static_cast<long long>(problem.arcs.size()));
  solver.run(limit);

  // canonical minimum cut: nodes residually reachable from the source
  std::vector<std::uint8_t> reach(static_cast<std::size_t>(problem.node_count), 0);
  std::deque<int> queue;
  for (int v = 0; v < problem.node_count; ++v) {
    if (solver.tr[v] > 0.0) {
      reach[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e = solver.first[v]; e != FlowSolver::kNone; e = solver.edges[e].next) {
      const int q = solver.edges[e].to;
      if (!reach[q] && solver.edges[e].cap > 0.0) {
        reach[q] = 1;
        queue.push_back(q);
      }
    }
  }

  double cut_capacity = 0.0;
  for (int v = 0; v < problem.node_count; ++v) {
    if (reach[v] && solver.tr[v] < 0.0) {
      throw numerical_error("max_flow: residual path from source to sink survived");
    }
    const TerminalCaps& t = problem.terminal_caps[static_cast<std::size_t>(v)];
    cut_capacity += reach[v] ? t.sink : t.source;
  }
  for (const Arc& a : problem.arcs) {
    if (reach[a.from] && !reach[a.to]) cut_capacity += a.cap;
    if (reach[a.to] && !reach[a.from]) cut_capacity += a.reverse_cap;
  }
  if (std::abs(cut_capacity - solver.flow) > 1e-9 * std::max(1.0, cut_capacity)) {
    throw numerical_error("max_flow: cut capacity does not certify the flow value");
  }

  return {solver.flow, std::move(reach)};
}

void scale_to_integer(CutProblem& problem, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("scale_to_integer: scale must be positive");
  for (TerminalCaps& t : problem.terminal_caps) {
    t.source = std::round(t.source * scale);
    t.sink = std::round(t.sink * scale);
  }
  for (Arc& a : problem.arcs) {
    a.cap = std::round(a.cap * scale);
    a.reverse_cap = std::round(a.reverse_cap * scale);
  }
}

CutResult cut_segment(const ScalarField& f, const WeightField& g, double alpha,
                      bool integer_scale) {
  CutProblem problem = build_cut_problem(f, g, alpha);
  if (integer_scale) scale_to_integer(problem);
  const MaxFlowResult res = max_flow(problem);

  BinaryMask mask(f.height, f.width);
  mask.bits = res.source_side;
  return {mask, shape_energy(mask, f, g, alpha)};
}

void dump_cut_problem(const CutProblem& problem, std::ostream& out) {
  const auto precision = out.precision(17);
  out << problem.node_count << ' ' << problem.arcs.size() << '\n';
  for (const TerminalCaps& t : problem.terminal_caps) {
    out << t.source << ' ' << t.sink << '\n';
  }
  for (const Arc& a : problem.arcs) {
    out << a.from << ' ' << a.to << ' ' << a.cap << ' ' << a.reverse_cap << '\n';
  }
  out.precision(precision);
}

}  // namespace tvseg
