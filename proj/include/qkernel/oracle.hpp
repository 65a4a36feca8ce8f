#pragma once

#include <optional>
#include <vector>

#include "qkernel/digraph.hpp"

namespace qk {

/// Largest digraph the brute-force oracles accept.
inline constexpr int kOracleMaxOrder = 64;

/// An optimum value together with the lexicographically least set attaining it.
struct OracleAnswer {
  int value = 0;
  VertexSet witness;
};

/// Minimum-cardinality q-kernel, optionally only among subsets of `restrict`.
/// The witness is the lexicographically least minimum. None when no q-kernel
/// lies inside the restriction.
std::optional<OracleAnswer> min_qkernel(const Digraph& d, int q, const std::optional<VertexSet>& restrict = std::nullopt);

/// Smallest q-kernel containing every vertex of `forced` (lexicographically
/// least among those of minimum size), or none.
std::optional<VertexSet> qkernel_containing(const Digraph& d, int q, const VertexSet& forced);

/// Every q-kernel, in lexicographic order.
std::vector<VertexSet> all_qkernels(const Digraph& d, int q);

/// Vertices lying in at least one q-kernel.
VertexSet qkernel_members(const Digraph& d, int q);

/// max |N⁺[Q]| over quasikernels Q.
OracleAnswer max_covering_quasikernel(const Digraph& d);

/// max 2|N⁺[Q]| - |Q| over quasikernels Q. A value of at least n means some
/// quasikernel has |N⁺(Q)| ≥ ½|V \ Q|.
OracleAnswer max_excess_quasikernel(const Digraph& d);

/// Whether D has r pairwise-disjoint q-kernels.
bool has_disjoint_qkernels(const Digraph& d, int r, int q);

/// max |N⁺(X)| over independent X.
OracleAnswer max_independent_reach(const Digraph& d);

/// Maximum independent set.
OracleAnswer max_independent_set(const Digraph& d);

/// Largest S with D[S] acyclic.
OracleAnswer max_acyclic_set(const Digraph& d);

}  // namespace qk
