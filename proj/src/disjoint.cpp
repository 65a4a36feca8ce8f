#include "qkernel/disjoint.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "qkernel/errors.hpp"
#include "qkernel/kernel.hpp"

namespace qk {

long long beta_closed_form(int r, int i) {
  if (r < 2 || i < 1 || i > r) throw PreconditionError("beta_closed_form: need r >= 2 and 1 <= i <= r");
  if (i == 1) return 7LL * (1LL << (r - 2)) - 2LL * r;
  if (i == 2) return 3LL * (1LL << (r - 1)) - 2LL * r;
  return (4LL * i - 3) * (1LL << (r - i)) - 2LL * r;
}

BetaVector beta_vector(int r) {
  if (r < 2) throw PreconditionError("beta_vector: r must be at least 2, got " + std::to_string(r));
  if (r > 60) throw PreconditionError("beta_vector: r = " + std::to_string(r) + " overflows 64-bit radii");
  BetaVector beta{2, {3, 2}};
  for (int level = 3; level <= r; ++level) {
    for (auto& value : beta.values) value = 2 * (value + level - 2);
    beta.values.push_back(2LL * level - 3);
    beta.r = level;
  }
  for (int i = 1; i <= r; ++i) {
    if (beta.at(i) != beta_closed_form(r, i))
      throw VerificationError("beta_vector: recursion and closed form disagree at i = " + std::to_string(i));
    if (beta.at(i) > (1LL << (r + 1)))
      throw VerificationError("beta_vector: beta_" + std::to_string(i) + " exceeds 2^(r+1)");
  }
  return beta;
}

namespace {

// Visits every k-subset of `pool` in lexicographic order; stops early when
// `visit` returns false.
bool for_each_subset_of_size(const std::vector<Vertex>& pool, int k, int universe,
                             const std::function<bool(const VertexSet&)>& visit) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  const int m = static_cast<int>(pool.size());
  if (k > m) return true;
  while (true) {
    VertexSet s(universe);
    for (int i : idx) s.insert(pool[i]);
    if (!visit(s)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<VertexSet> subsets_where(const Digraph& d, int s, const std::function<bool(const VertexSet&)>& keep) {
  if (s < 1) throw PreconditionError("set size bound must be at least 1");
  std::vector<VertexSet> found;
  auto pool = d.vertices().members();
  for (int k = 1; k <= std::min(s, d.order()); ++k)
    for_each_subset_of_size(pool, k, d.order(), [&](const VertexSet& set) {
      if (keep(set)) found.push_back(set);
      return true;
    });
  return found;
}

}  // namespace

std::vector<VertexSet> find_source_sets(const Digraph& d, int s) {
  return subsets_where(d, s, [&](const VertexSet& set) { return open_in_neighborhood(d, set).empty(); });
}

bool is_pseudo_source_set(const Digraph& d, const VertexSet& s) {
  if (s.empty()) return false;
  for (Vertex v : open_in_neighborhood(d, s))
    for (Vertex u : d.in_neighbors(v))
      if (!s.contains(u)) return false;
  return true;
}

bool is_proper_pseudo_source_set(const Digraph& d, const VertexSet& s) {
  if (!is_pseudo_source_set(d, s)) return false;
  auto members = s.members();
  for (int k = 1; k < static_cast<int>(members.size()); ++k) {
    bool clean = for_each_subset_of_size(members, k, d.order(),
                                         [&](const VertexSet& t) { return !is_pseudo_source_set(d, t); });
    if (!clean) return false;
  }
  return true;
}

std::vector<VertexSet> find_pseudo_source_sets(const Digraph& d, int s, bool proper_only) {
  return subsets_where(d, s, [&](const VertexSet& set) {
    return proper_only ? is_proper_pseudo_source_set(d, set) : is_pseudo_source_set(d, set);
  });
}

SquaredDigraph square_through(const Digraph& d, const VertexSet& q_set) {
  if (auto arc = dependent_arc(d, q_set))
    throw PreconditionError("square_through: Q is not independent (arc (" + std::to_string(arc->tail) + "," +
                            std::to_string(arc->head) + "))");
  const int n = d.order();
  std::vector<int> local(n, -1);
  std::vector<Vertex> original;
  for (Vertex v = 0; v < n; ++v)
    if (!q_set.contains(v)) {
      local[v] = static_cast<int>(original.size());
      original.push_back(v);
    }
  const int m = static_cast<int>(original.size());
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (const Arc& a : d.arcs())
    if (local[a.tail] >= 0 && local[a.head] >= 0) adj[local[a.tail]][local[a.head]] = true;
  for (Vertex v : q_set)
    for (Vertex u : d.in_neighbors(v))
      for (Vertex w : d.out_neighbors(v))
        if (u != w) adj[local[u]][local[w]] = true;
  std::vector<Arc> arcs;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (adj[i][j]) arcs.push_back({i, j});
  return {Digraph(m, std::move(arcs)), std::move(original)};
}

namespace {

void require_no_source_sets(const Digraph& d, int s, const char* op) {
  if (s < 1) return;
  auto sources = find_source_sets(d, s);
  if (!sources.empty())
    throw PreconditionError(std::string(op) + ": " + sources.front().to_string() + " is a " + std::to_string(s) +
                            "-source set");
}

}  // namespace

Digraph pseudo_source_completion(const Digraph& d, int r) {
  if (r < 3) throw PreconditionError("pseudo_source_completion: r must be at least 3, got " + std::to_string(r));
  require_no_source_sets(d, r - 1, "pseudo_source_completion");
  const int n = d.order();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const Arc& a : d.arcs()) adj[a.tail][a.head] = true;
  // All proper sets at once, against the original D.
  for (const VertexSet& s : find_pseudo_source_sets(d, r - 2, true)) {
    auto ins = open_in_neighborhood(d, s).members();
    for (Vertex a : ins)
      for (Vertex b : ins)
        if (a != b) adj[a][b] = true;
  }
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (adj[u][v]) arcs.push_back({u, v});
  Digraph completed(n, std::move(arcs));
  auto left = find_pseudo_source_sets(completed, r - 2, false);
  if (!left.empty())
    throw VerificationError("pseudo_source_completion: " + left.front().to_string() +
                            " is still a pseudo-source set after completion");
  return completed;
}

VertexSet three_kernel_disjoint_from(const Digraph& d, const VertexSet& q_set) {
  require_no_source_sets(d, 1, "three_kernel_disjoint_from");
  if (auto arc = dependent_arc(d, q_set))
    throw PreconditionError("three_kernel_disjoint_from: Q is not independent (arc (" + std::to_string(arc->tail) +
                            "," + std::to_string(arc->head) + "))");
  VertexSet other = quasikernel_in(d, d.vertices() - q_set);
  require_q_kernel(d, other, 3, "three_kernel_disjoint_from");
  if (other.intersects(q_set)) throw VerificationError("three_kernel_disjoint_from: result meets Q");
  return other;
}

namespace {

std::vector<RadiusKernel> disjoint_recursive(const Digraph& d, int r) {
  if (r == 2) {
    VertexSet second = quasikernel(d);
    VertexSet first = three_kernel_disjoint_from(d, second);
    return {{first, 3}, {second, 2}};
  }
  Digraph completed = pseudo_source_completion(d, r);
  VertexSet last = quasikernel(completed);
  SquaredDigraph squared = square_through(completed, last);
  auto inner = disjoint_recursive(squared.graph, r - 1);
  BetaVector beta = beta_vector(r);
  std::vector<RadiusKernel> out;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    VertexSet lifted(d.order());
    for (Vertex v : inner[i].members) lifted.insert(squared.original[v]);
    out.push_back({lifted, beta.values[i]});
  }
  out.push_back({last, beta.values.back()});
  return out;
}

}  // namespace

std::vector<RadiusKernel> disjoint_qkernels(const Digraph& d, int r) {
  if (r < 2) throw PreconditionError("disjoint_qkernels: r must be at least 2, got " + std::to_string(r));
  require_no_source_sets(d, r - 1, "disjoint_qkernels");
  auto kernels = disjoint_recursive(d, r);
  BetaVector beta = beta_vector(r);
  VertexSet used(d.order());
  for (int i = 0; i < r; ++i) {
    auto& k = kernels[i];
    if (k.radius != beta.values[i]) throw VerificationError("disjoint_qkernels: radius mismatch");
    if (k.members.intersects(used)) throw VerificationError("disjoint_qkernels: kernels are not disjoint");
    used |= k.members;
    require_q_kernel(d, k.members, static_cast<int>(std::min<long long>(k.radius, d.order() + 1)),
                     "disjoint_qkernels (set " + std::to_string(i + 1) + ")");
  }
  return kernels;
}

}  // namespace qk
