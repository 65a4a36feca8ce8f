#pragma once

#include <boost/rational.hpp>

#include "qkernel/digraph.hpp"

namespace qk {

using Rational = boost::rational<long long>;

/// n - δn/(δ+Δ): the largest an independent set can be in a digraph with
/// minimum in-degree δ and maximum out-degree Δ. Throws when δ+Δ = 0.
Rational independence_upper_bound(long long n, long long min_in, long long max_out);

/// Quasikernel of a source-free digraph with |Q| ≤ n - ⌊√n⌋. If some vertex
/// has out-degree at least ⌊√n⌋ (the lowest-index vertex of maximum
/// out-degree is used) the quasikernel avoids its out-neighbourhood;
/// otherwise the out-degree bound already caps every independent set.
VertexSet small_quasikernel(const Digraph& d);

struct GeneralizedSmallResult {
  VertexSet quasikernel;
  /// |N⁺(X) \ X|.
  int reach = 0;
  /// n - reach; |quasikernel| never exceeds it.
  int size_bound = 0;
  /// n - sqrt(δn) + δ for the digraph's minimum in-degree δ (informational).
  double min_in_degree_bound = 0.0;
};

/// Quasikernel avoiding N⁺(X) for an independent X, with the size bound it
/// certifies.
GeneralizedSmallResult small_quasikernel_generalized(const Digraph& d, const VertexSet& x_set);

/// Quasikernel of size < n/2 in a source-free bipartite digraph with no
/// directed 2- or 4-cycles.
VertexSet bipartite_girth5_quasikernel(const Digraph& d);

}  // namespace qk
