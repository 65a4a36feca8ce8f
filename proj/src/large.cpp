#include "qkernel/large.hpp"

#include <algorithm>
#include <string>

#include "qkernel/errors.hpp"
#include "qkernel/kernel.hpp"
#include "qkernel/oracle.hpp"

namespace qk {

namespace {

long long cube(long long x) { return x * x * x; }

// |S|³ ≥ n without floating point.
bool cube_reaches(long long size, long long n) { return cube(size) >= n; }

}  // namespace

VertexSet greedy_acyclic_set(const Digraph& d) {
  VertexSet a(d.order());
  VertexSet blocked(d.order());
  for (Vertex v = 0; v < d.order(); ++v) {
    if (blocked.contains(v)) continue;
    a.insert(v);
    blocked.insert(v);
    for (Vertex w : d.out_neighbors(v)) blocked.insert(w);
  }
  if (!induces_acyclic(d, a)) throw VerificationError("greedy_acyclic_set: result induces a cycle");
  const long long n = d.order();
  if (static_cast<long long>(a.size()) * (degree_stats(d).max_out + 1) < n)
    throw VerificationError("greedy_acyclic_set: |A|(Δ+1) < n");
  return a;
}

VertexSet greedy_half_covering_mis(const Digraph& d) {
  const int n = d.order();
  VertexSet s(n);
  VertexSet remaining = d.vertices();
  while (!remaining.empty()) {
    Vertex pick = -1;
    for (Vertex v : remaining) {
      int out = 0, in = 0;
      for (Vertex w : d.out_neighbors(v)) out += remaining.contains(w);
      for (Vertex w : d.in_neighbors(v)) in += remaining.contains(w);
      if (out >= in) {
        pick = v;
        break;
      }
    }
    // Some vertex of D[T] has out-degree ≥ in-degree since the degree sums agree.
    if (pick < 0) throw VerificationError("greedy_half_covering_mis: no vertex with out-degree ≥ in-degree");
    s.insert(pick);
    remaining -= closed_neighborhood(d, VertexSet(n, {pick}));
    if (2 * closed_out_neighborhood(d, s).size() < (d.vertices() - remaining).size())
      throw VerificationError("greedy_half_covering_mis: 2|N+[S]| < |N[S]|");
  }
  if (!is_independent(d, s)) throw VerificationError("greedy_half_covering_mis: result is not independent");
  if (2 * closed_out_neighborhood(d, s).size() < n) throw VerificationError("greedy_half_covering_mis: 2|N+[S]| < n");
  return s;
}

RadiusSet three_kernel_large(const Digraph& d) {
  const int n = d.order();
  VertexSet base = quasikernel(d);
  RadiusSet result{base, 2};
  if (3 * closed_out_neighborhood(d, base).size() < n) {
    VertexSet rest = d.vertices() - out_neighborhood(d, base);
    auto sub = induced_subdigraph(d, rest);
    result = {sub.lift(greedy_half_covering_mis(sub.graph), n), 3};
  }
  require_q_kernel(d, result.members, result.radius, "three_kernel_large");
  if (3 * closed_out_neighborhood(d, result.members).size() < n)
    throw VerificationError("three_kernel_large: 3|N+[Q]| < n");
  return result;
}

VertexSet quasikernel_covering(const Digraph& d, const VertexSet& a) {
  if (!induces_acyclic(d, a)) throw PreconditionError("quasikernel_covering: D[A] has a directed cycle");
  // Acyclicity is hereditary, so one ascending pass already gives a maximal S.
  VertexSet s = a;
  for (Vertex v = 0; v < d.order(); ++v) {
    if (s.contains(v)) continue;
    s.insert(v);
    if (!induces_acyclic(d, s)) s.erase(v);
  }
  auto sub = induced_subdigraph(d, s);
  VertexSet q_set = sub.lift(kernel_of_acyclic(sub.graph), d.order());
  require_q_kernel(d, q_set, 2, "quasikernel_covering");
  if (!a.is_subset_of(closed_out_neighborhood(d, q_set)))
    throw VerificationError("quasikernel_covering: A is not inside N+[Q]");
  return q_set;
}

VertexSet quasikernel_members(const Digraph& d) { return qkernel_members(d, 2); }

namespace {

VertexSet quasikernel_through(const Digraph& d, Vertex y) {
  auto found = qkernel_containing(d, 2, VertexSet(d.order(), {y}));
  if (!found) throw VerificationError("large_quasikernel: vertex " + std::to_string(y) + " is in no quasikernel");
  return *found;
}

}  // namespace

VertexSet large_quasikernel(const Digraph& d) {
  const long long n = d.order();
  if (n == 0) return VertexSet(0);
  VertexSet members = quasikernel_members(d);
  const long long outside = n - members.size();  // |X|

  VertexSet q_set(d.order());
  if (cube(n - outside) <= n * n) {
    // Few members: averaging the arcs into X finds a member with large out-degree.
    Vertex y = -1;
    for (Vertex v : members)
      if (cube_reaches(d.out_degree(v) + 1, n)) {
        y = v;
        break;
      }
    if (y < 0) throw VerificationError("large_quasikernel: no member with (deg+1)^3 >= n");
    q_set = quasikernel_through(d, y);
  } else {
    auto reduced = induced_subdigraph(d, members);
    Vertex y = -1;
    for (Vertex v = 0; v < reduced.graph.order() && y < 0; ++v)
      if (cube_reaches(reduced.graph.out_degree(v) + 1, n)) y = reduced.original[v];
    if (y >= 0) {
      q_set = quasikernel_through(d, y);
    } else {
      VertexSet a = reduced.lift(greedy_acyclic_set(reduced.graph), d.order());
      q_set = quasikernel_covering(d, a);
    }
  }
  require_q_kernel(d, q_set, 2, "large_quasikernel");
  if (!cube_reaches(closed_out_neighborhood(d, q_set).size(), n))
    throw VerificationError("large_quasikernel: |N+[Q]|^3 < n");
  return q_set;
}

Digraph pendant_blowup(const Digraph& d, int k) {
  if (k < 1) throw PreconditionError("pendant_blowup: k must be at least 1, got " + std::to_string(k));
  const int n = d.order();
  std::vector<Arc> arcs = d.arcs();
  for (Vertex v = 0; v < n; ++v)
    for (int i = 0; i < k; ++i) arcs.push_back({v, n + v * k + i});
  return Digraph(n * (k + 1), std::move(arcs));
}

}  // namespace qk
