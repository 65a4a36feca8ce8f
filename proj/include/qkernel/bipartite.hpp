#pragma once

#include <optional>
#include <vector>

#include "qkernel/digraph.hpp"

namespace qk {

/// Shape of a unicyclic bipartite digraph: one directed cycle
/// (u₁, v₁, …, u_ℓ, v_ℓ) with every u_j in U, and a tree hanging off it.
struct UnicyclicStructure {
  /// u₁, v₁, …, u_ℓ, v_ℓ; u₁ is the lowest-index U vertex on the cycle.
  std::vector<Vertex> cycle;
  /// The unique in-neighbour of each vertex.
  std::vector<Vertex> parent;
  /// j (1-based) such that the path from the cycle to w starts at u_j or v_j.
  std::vector<int> type_of;
  /// ty(j), stored at index j-1.
  std::vector<int> ty;
  /// dist(C, w).
  std::vector<int> depth;

  int half_length() const { return static_cast<int>(cycle.size()) / 2; }
  Vertex u(int j) const { return cycle[2 * (j - 1)]; }
  Vertex v(int j) const { return cycle[2 * (j - 1) + 1]; }
};

/// Requires every in-degree to be 1, a connected underlying graph, the
/// bipartition `b`, and a cycle of length at least 4.
UnicyclicStructure unicyclic_structure(const Digraph& d, const Bipartition& b);

/// A q-kernel Q ⊆ U with (q+3)|Q| ≤ 2n, for odd q ≥ 3, unicyclic D with
/// cycle length at least 4 and 2n ≥ q+3.
VertexSet unicyclic_qkernel(const Digraph& d, const Bipartition& b, int q);

struct ReducedComponent {
  Relabeled part;
  /// The component's bipartition, in local labels, when it has one.
  std::optional<Bipartition> sides;
};

struct IndegreeOneReduction {
  /// Spanning subdigraph keeping the arc from each vertex's lowest in-neighbour.
  Digraph reduced;
  std::vector<ReducedComponent> components;
};

/// Requires a source-free D. When `sides` is given it is restricted to each
/// component; otherwise each component is 2-coloured on its own.
IndegreeOneReduction indegree_one_reduction(const Digraph& d, const std::optional<Bipartition>& sides = std::nullopt);

/// A q-kernel inside U of size at most n/ℓ, for source-free bipartite D
/// whose directed cycles all have length at least ℓ, with 3 ≤ ℓ and
/// 2ℓ ≤ q+3. U is the part find_bipartition puts the lowest vertices in.
VertexSet bipartite_qkernel(const Digraph& d, int q, int girth);

/// Directed 2ℓ-cycle u_i = 2i → v_i = 2i+1 → u_{i+1}, with a directed path
/// of q-2 fresh vertices hanging off every v_i. Order qℓ.
Digraph cycle_tails_lower_bound(int q, int half_length);

}  // namespace qk
