#pragma once

#include <vector>

#include "qkernel/digraph.hpp"

namespace qk {

/// Reach radii (β₁, …, β_r) for r disjoint kernels. β⁽²⁾ = (3,2); for r > 2,
/// β_i = 2(β_i⁽ʳ⁻¹⁾ + r - 2) for i < r and β_r = 2r - 3.
struct BetaVector {
  int r = 0;
  std::vector<long long> values;

  /// β_i, 1-based.
  long long at(int i) const { return values.at(i - 1); }
};

/// Builds β⁽ʳ⁾ by the recursion and checks it against the closed form and
/// the 2^{r+1} ceiling. Throws for r < 2 or when the values overflow.
BetaVector beta_vector(int r);
/// Closed form of β_i⁽ʳ⁾ (1-based i).
long long beta_closed_form(int r, int i);

/// Every nonempty S with |S| ≤ s and no arc entering S from outside, ordered
/// by size then lexicographically.
std::vector<VertexSet> find_source_sets(const Digraph& d, int s);

/// Whether every v ∈ N⁻(S) has N⁻(v) ⊆ S.
bool is_pseudo_source_set(const Digraph& d, const VertexSet& s);
/// Whether S is a pseudo-source set with no nonempty strict subset that is one.
bool is_proper_pseudo_source_set(const Digraph& d, const VertexSet& s);

/// Nonempty pseudo-source sets of size ≤ s, ordered by size then
/// lexicographically; optionally only the proper ones.
std::vector<VertexSet> find_pseudo_source_sets(const Digraph& d, int s, bool proper_only);

/// D - Q with an arc uw whenever uw ∈ E(D) or u → v → w for some v ∈ Q.
/// `original` maps the new labels back to D.
struct SquaredDigraph {
  Digraph graph;
  std::vector<Vertex> original;
};
SquaredDigraph square_through(const Digraph& d, const VertexSet& q_set);

/// D with all arcs added among N⁻(S) for every proper (r-2)-pseudo-source
/// set S. Requires r ≥ 3 and no (r-1)-source sets.
Digraph pseudo_source_completion(const Digraph& d, int r);

/// A 3-kernel of a source-free D disjoint from the independent set Q.
VertexSet three_kernel_disjoint_from(const Digraph& d, const VertexSet& q_set);

struct RadiusKernel {
  VertexSet members;
  long long radius = 0;
};

/// r pairwise-disjoint kernels, the i-th a β_i⁽ʳ⁾-kernel, for D without
/// (r-1)-source sets.
std::vector<RadiusKernel> disjoint_qkernels(const Digraph& d, int r);

}  // namespace qk
