#include "qkernel/small.hpp"

#include <algorithm>
#include <cmath>

#include "qkernel/errors.hpp"
#include "qkernel/kernel.hpp"

namespace qk {

Rational independence_upper_bound(long long n, long long min_in, long long max_out) {
  if (min_in < 0 || max_out < 0) throw PreconditionError("degrees must be non-negative");
  if (min_in + max_out == 0) throw PreconditionError("independence bound needs δ + Δ ≥ 1");
  return Rational(n) - Rational(min_in * n, min_in + max_out);
}

namespace {

void require_source_free(const Digraph& d, const char* op) {
  auto stats = degree_stats(d);
  if (!stats.source_free())
    throw PreconditionError(std::string(op) + ": vertex " + std::to_string(stats.sources.lowest()) + " is a source");
}

}  // namespace

VertexSet small_quasikernel(const Digraph& d) {
  require_source_free(d, "small_quasikernel");
  const int n = d.order();
  const int root = isqrt(n);
  Vertex best = -1;
  for (Vertex v = 0; v < n; ++v)
    if (best < 0 || d.out_degree(v) > d.out_degree(best)) best = v;

  VertexSet q_set = (best >= 0 && d.out_degree(best) >= root) ? quasikernel_avoiding(d, best) : quasikernel(d);
  if (q_set.size() > n - root)
    throw VerificationError("small_quasikernel: size " + std::to_string(q_set.size()) + " exceeds n - floor(sqrt n) = " +
                            std::to_string(n - root));
  return q_set;
}

GeneralizedSmallResult small_quasikernel_generalized(const Digraph& d, const VertexSet& x_set) {
  GeneralizedSmallResult result;
  result.quasikernel = quasikernel_avoiding_set(d, x_set);
  result.reach = (out_neighborhood(d, x_set) - x_set).size();
  result.size_bound = d.order() - result.reach;
  const double n = d.order();
  const double delta = degree_stats(d).min_in;
  result.min_in_degree_bound = n - std::sqrt(delta * n) + delta;
  if (result.quasikernel.size() > result.size_bound)
    throw VerificationError("small_quasikernel_generalized: size exceeds n - |N+(X)|");
  return result;
}

VertexSet bipartite_girth5_quasikernel(const Digraph& d) {
  require_source_free(d, "bipartite_girth5_quasikernel");
  auto parts = find_bipartition(d);
  if (!parts) throw PreconditionError("bipartite_girth5_quasikernel: digraph is not bipartite");
  if (auto short_cycles = directed_cycle_lengths(d, 4); !short_cycles.empty())
    throw PreconditionError("bipartite_girth5_quasikernel: digraph has a directed " +
                            std::to_string(*short_cycles.begin()) + "-cycle");
  const int n = d.order();

  VertexSet q_set(n);
  if (2 * parts->u.size() < n) {
    q_set = parts->u;
  } else if (2 * parts->v.size() < n) {
    q_set = parts->v;
  } else {
    // A vertex all of whose out-neighbours have a second in-neighbour.
    Vertex pivot = -1;
    for (Vertex u = 0; u < n && pivot < 0; ++u) {
      auto outs = d.out_neighbors(u);
      if (std::all_of(outs.begin(), outs.end(), [&](Vertex w) { return d.in_degree(w) >= 2; })) pivot = u;
    }
    if (pivot >= 0) {
      q_set = parts->u.contains(pivot) ? parts->u : parts->v;
      q_set.erase(pivot);
    } else {
      for (Vertex v = 0; v < n; ++v)
        if (d.in_degree(v) != 1 || d.out_degree(v) != 1)
          throw VerificationError("bipartite_girth5_quasikernel: no pivot vertex, yet vertex " + std::to_string(v) +
                                  " is not on a bare cycle");
      // Disjoint cycles x1..x_{2l}: keep x1 and x_{2i} for 2 <= i <= l-1.
      for (const auto& component : weak_components(d)) {
        std::vector<Vertex> cycle{component.front()};
        while (static_cast<int>(cycle.size()) < static_cast<int>(component.size()))
          cycle.push_back(d.out_neighbors(cycle.back())[0]);
        const int half = static_cast<int>(cycle.size()) / 2;
        q_set.insert(cycle[0]);
        for (int i = 2; i <= half - 1; ++i) q_set.insert(cycle[2 * i - 1]);
      }
    }
  }
  require_q_kernel(d, q_set, 2, "bipartite_girth5_quasikernel");
  if (2 * q_set.size() >= n) throw VerificationError("bipartite_girth5_quasikernel: result is not below n/2");
  return q_set;
}

}  // namespace qk
