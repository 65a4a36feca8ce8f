#include "qkernel/kernel.hpp"

#include <algorithm>

#include "qkernel/errors.hpp"

namespace qk {

std::string KernelViolation::describe() const {
  if (kind == Kind::Dependent)
    return "not independent: arc (" + std::to_string(arc.tail) + "," + std::to_string(arc.head) + ")";
  std::string dist = distance == DistanceTable::kInfinite ? "unreachable" : "at distance " + std::to_string(distance);
  return "vertex " + std::to_string(vertex) + " " + dist;
}

KernelCheck is_q_kernel(const Digraph& d, const VertexSet& q_set, int q) {
  if (q < 1) throw PreconditionError("kernel radius must be at least 1");
  if (q_set.universe() != d.order()) throw PreconditionError("candidate set universe does not match the digraph");
  if (auto arc = dependent_arc(d, q_set)) {
    KernelViolation v{KernelViolation::Kind::Dependent};
    v.arc = *arc;
    return KernelCheck(v);
  }
  if (q_set.empty()) {
    if (d.order() == 0) return KernelCheck(KernelCertificate{q_set, q, DistanceTable{}});
    KernelViolation v{KernelViolation::Kind::OutOfReach};
    v.vertex = 0;
    v.distance = DistanceTable::kInfinite;
    return KernelCheck(v);
  }
  auto table = distances_from(d, q_set);
  for (Vertex v = 0; v < d.order(); ++v) {
    if (table.at(v) > q) {
      KernelViolation violation{KernelViolation::Kind::OutOfReach};
      violation.vertex = v;
      violation.distance = table.at(v);
      return KernelCheck(violation);
    }
  }
  return KernelCheck(KernelCertificate{q_set, q, std::move(table)});
}

KernelCertificate require_q_kernel(const Digraph& d, const VertexSet& q_set, int q, const std::string& what) {
  auto check = is_q_kernel(d, q_set, q);
  if (!check)
    throw VerificationError(what + ": " + q_set.to_string() + " is not a " + std::to_string(q) +
                            "-kernel (" + check.violation().describe() + ")");
  return check.certificate();
}

VertexSet kernel_of_acyclic(const Digraph& d) {
  auto order = topological_order(d);
  if (!order) throw PreconditionError("kernel_of_acyclic: digraph has a directed cycle");
  VertexSet kernel(d.order());
  // Sources first: a vertex joins unless an in-neighbour already covers it.
  for (Vertex v : *order) {
    auto ins = d.in_neighbors(v);
    if (std::none_of(ins.begin(), ins.end(), [&](Vertex u) { return kernel.contains(u); })) kernel.insert(v);
  }
  require_q_kernel(d, kernel, 1, "kernel_of_acyclic");
  return kernel;
}

namespace {

bool hits_in_neighbour(const Digraph& d, const VertexSet& s, Vertex x) {
  auto ins = d.in_neighbors(x);
  return std::any_of(ins.begin(), ins.end(), [&](Vertex u) { return s.contains(u); });
}

// The recursion on D[alive] with an explicit first pivot, unrolled: record
// the pivots while peeling N⁺[x] off, then decide membership innermost-first.
VertexSet pivot_recursion(const Digraph& d, VertexSet alive, Vertex first_pivot) {
  std::vector<Vertex> pivots;
  Vertex x = first_pivot;
  while (x >= 0) {
    pivots.push_back(x);
    alive.erase(x);
    for (Vertex w : d.out_neighbors(x)) alive.erase(w);
    x = alive.lowest();
  }
  VertexSet q_set(d.order());
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it)
    if (!hits_in_neighbour(d, q_set, *it)) q_set.insert(*it);
  return q_set;
}

}  // namespace

VertexSet quasikernel_in(const Digraph& d, const VertexSet& alive) { return pivot_recursion(d, alive, alive.lowest()); }

VertexSet quasikernel(const Digraph& d) {
  auto q_set = quasikernel_in(d, d.vertices());
  require_q_kernel(d, q_set, 2, "quasikernel");
  return q_set;
}

VertexSet quasikernel_avoiding(const Digraph& d, Vertex x) {
  if (x < 0 || x >= d.order()) throw PreconditionError("quasikernel_avoiding: vertex " + std::to_string(x) + " out of range");
  auto q_set = pivot_recursion(d, d.vertices(), x);
  require_q_kernel(d, q_set, 2, "quasikernel_avoiding");
  VertexSet x_set(d.order(), {x});
  if (out_neighborhood(d, x_set).intersects(q_set))
    throw VerificationError("quasikernel_avoiding: result meets N+(x)");
  if (!q_set.contains(x) && !hits_in_neighbour(d, q_set, x))
    throw VerificationError("quasikernel_avoiding: result misses N-[x]");
  return q_set;
}

VertexSet quasikernel_avoiding_set(const Digraph& d, const VertexSet& x_set) {
  if (auto arc = dependent_arc(d, x_set))
    throw PreconditionError("quasikernel_avoiding_set: X is not independent (arc (" + std::to_string(arc->tail) + "," +
                            std::to_string(arc->head) + "))");
  VertexSet reached = out_neighborhood(d, x_set);
  VertexSet base = quasikernel_in(d, d.vertices() - (x_set | reached));
  VertexSet q_set = base;
  for (Vertex x : x_set)
    if (!hits_in_neighbour(d, base, x)) q_set.insert(x);
  require_q_kernel(d, q_set, 2, "quasikernel_avoiding_set");
  if (reached.intersects(q_set)) throw VerificationError("quasikernel_avoiding_set: result meets N+(X)");
  return q_set;
}

}  // namespace qk
