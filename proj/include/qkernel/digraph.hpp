#pragma once

#include <compare>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "qkernel/vertex_set.hpp"

namespace qk {

struct Arc {
  Vertex tail;
  Vertex head;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Finite simple digraph on vertices 0..n-1. Digons are allowed, self-loops
/// and repeated arcs are not. Immutable once built.
class Digraph {
 public:
  Digraph() = default;
  /// Throws PreconditionError naming the first self-loop, out-of-range
  /// endpoint or duplicate arc.
  Digraph(int n, std::vector<Arc> arcs);

  int order() const noexcept { return n_; }
  int arc_count() const noexcept { return static_cast<int>(arcs_.size()); }
  /// Sorted lexicographically.
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  std::span<const Vertex> out_neighbors(Vertex v) const { return out_[v]; }
  std::span<const Vertex> in_neighbors(Vertex v) const { return in_[v]; }
  int out_degree(Vertex v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(Vertex v) const { return static_cast<int>(in_[v].size()); }
  bool has_arc(Vertex u, Vertex v) const;

  VertexSet vertices() const { return VertexSet::full(n_); }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.n_ == b.n_ && a.arcs_ == b.arcs_; }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

/// Validating constructor in free-function form.
Digraph build_digraph(int n, std::vector<Arc> arcs);

/// A digraph obtained from another by keeping a vertex subset and relabeling
/// it densely in ascending order. `original[i]` is the source id of vertex i.
struct Relabeled {
  Digraph graph;
  std::vector<Vertex> original;

  /// Maps a set over `graph` back into a universe of size `universe`.
  VertexSet lift(const VertexSet& local, int universe) const;
  /// Maps a set over the source universe onto `graph` (members outside the
  /// kept subset are dropped).
  VertexSet restrict(const VertexSet& source) const;
};

Relabeled induced_subdigraph(const Digraph& d, const VertexSet& keep);

/// Per-vertex distance from a source set along arc direction.
struct DistanceTable {
  static constexpr int kInfinite = std::numeric_limits<int>::max();

  std::vector<int> distance;

  int at(Vertex v) const { return distance[v]; }
  bool reachable(Vertex v) const { return distance[v] != kInfinite; }
  /// Largest distance; kInfinite when some vertex is unreachable, 0 when empty.
  int eccentricity() const;
};

/// S ∪ {v : uv ∈ E for some u ∈ S}.
VertexSet closed_out_neighborhood(const Digraph& d, const VertexSet& s);
/// {v : uv ∈ E for some u ∈ S}; may meet S.
VertexSet out_neighborhood(const Digraph& d, const VertexSet& s);
/// {u ∉ S : uv ∈ E for some v ∈ S}.
VertexSet open_in_neighborhood(const Digraph& d, const VertexSet& s);
/// Every vertex on an arc touching S, together with S.
VertexSet closed_neighborhood(const Digraph& d, const VertexSet& s);

/// Multi-source BFS. Throws PreconditionError when `sources` is empty.
DistanceTable distances_from(const Digraph& d, const VertexSet& sources);
/// BFS restricted to the vertices of `within` (sources outside it are ignored).
DistanceTable distances_within(const Digraph& d, const VertexSet& sources, const VertexSet& within);

bool is_independent(const Digraph& d, const VertexSet& s);
/// An arc with both endpoints in S, if any.
std::optional<Arc> dependent_arc(const Digraph& d, const VertexSet& s);

struct DegreeStats {
  int min_in = 0;
  int max_out = 0;
  VertexSet sources;

  bool source_free() const { return sources.empty(); }
};
DegreeStats degree_stats(const Digraph& d);

struct SccPartition {
  std::vector<std::vector<Vertex>> components;
  std::vector<int> component_of;
};
/// Components are listed in order of their smallest vertex.
SccPartition strongly_connected_components(const Digraph& d);
/// max over u,v in the component of dist(u,v). Quadratic BFS, computed on demand.
int scc_diameter(const Digraph& d, std::span<const Vertex> component);

/// Every length ℓ ≤ cap for which D has a directed ℓ-cycle. Exhaustive
/// simple-cycle search, meant for small n.
std::set<int> directed_cycle_lengths(const Digraph& d, int cap);
inline std::set<int> directed_cycle_lengths(const Digraph& d) { return directed_cycle_lengths(d, d.order()); }

struct Bipartition {
  VertexSet u;
  VertexSet v;
};
/// 2-colouring of the underlying graph, lowest vertex of each weak component
/// in U; none when some arc cannot cross.
std::optional<Bipartition> find_bipartition(const Digraph& d);
bool is_bipartition(const Digraph& d, const Bipartition& b);

/// Topological order with smallest available vertex first; none when cyclic.
std::optional<std::vector<Vertex>> topological_order(const Digraph& d);
bool is_acyclic(const Digraph& d);
/// Whether D[S] has no directed cycle.
bool induces_acyclic(const Digraph& d, const VertexSet& s);

/// Weak components, each sorted, listed by smallest vertex.
std::vector<std::vector<Vertex>> weak_components(const Digraph& d);

/// Integer floor of sqrt(n).
int isqrt(long long n);

}  // namespace qk
