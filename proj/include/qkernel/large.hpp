#pragma once

#include "qkernel/digraph.hpp"

namespace qk {

/// A with D[A] acyclic and |A|(Δ+1) ≥ n: repeatedly take the lowest vertex
/// outside N⁺[A].
VertexSet greedy_acyclic_set(const Digraph& d);

/// Maximal independent S with 2|N⁺[S]| ≥ n. Each step takes the lowest vertex
/// of T = V \ N[S] whose out-degree in D[T] is at least its in-degree there.
VertexSet greedy_half_covering_mis(const Digraph& d);

struct RadiusSet {
  VertexSet members;
  /// 2 when the base quasikernel already covered a third of D, else 3.
  int radius = 2;
};

/// A 3-kernel (or quasikernel) Q with 3|N⁺[Q]| ≥ n.
RadiusSet three_kernel_large(const Digraph& d);

/// A quasikernel Q with A ⊆ N⁺[Q], for A inducing an acyclic subdigraph.
VertexSet quasikernel_covering(const Digraph& d, const VertexSet& a);

/// Vertices contained in at least one quasikernel. Exponential.
VertexSet quasikernel_members(const Digraph& d);

/// A quasikernel Q with |N⁺[Q]|³ ≥ n. Uses quasikernel_members, so it is
/// exponential in n.
VertexSet large_quasikernel(const Digraph& d);

/// D with k fresh out-leaves hung on every vertex; leaf i of v is
/// n + v·k + (i-1). Throws when k < 1.
Digraph pendant_blowup(const Digraph& d, int k);

}  // namespace qk
