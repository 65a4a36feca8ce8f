#include "qkernel/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <string>

#include "qkernel/errors.hpp"

namespace qk {

namespace {

std::string arc_text(const Arc& a) { return "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")"; }

}  // namespace

Digraph::Digraph(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)), out_(n), in_(n) {
  if (n < 0) throw PreconditionError("vertex count must be non-negative");
  for (const Arc& a : arcs_) {
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
      throw PreconditionError("arc " + arc_text(a) + " has an endpoint outside 0.." + std::to_string(n - 1));
    if (a.tail == a.head) throw PreconditionError("arc " + arc_text(a) + " is a self-loop");
  }
  std::sort(arcs_.begin(), arcs_.end());
  if (auto dup = std::adjacent_find(arcs_.begin(), arcs_.end()); dup != arcs_.end())
    throw PreconditionError("arc " + arc_text(*dup) + " is repeated");
  for (const Arc& a : arcs_) {
    out_[a.tail].push_back(a.head);
    in_[a.head].push_back(a.tail);
  }
  for (auto& list : in_) std::sort(list.begin(), list.end());
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  const auto& list = out_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

Digraph build_digraph(int n, std::vector<Arc> arcs) { return Digraph(n, std::move(arcs)); }

VertexSet Relabeled::lift(const VertexSet& local, int universe) const {
  VertexSet out(universe);
  for (Vertex v : local) out.insert(original[v]);
  return out;
}

VertexSet Relabeled::restrict(const VertexSet& source) const {
  VertexSet out(graph.order());
  for (int i = 0; i < graph.order(); ++i)
    if (source.contains(original[i])) out.insert(i);
  return out;
}

Relabeled induced_subdigraph(const Digraph& d, const VertexSet& keep) {
  std::vector<int> local(d.order(), -1);
  std::vector<Vertex> original;
  for (Vertex v : keep) {
    local[v] = static_cast<int>(original.size());
    original.push_back(v);
  }
  std::vector<Arc> arcs;
  for (const Arc& a : d.arcs())
    if (local[a.tail] >= 0 && local[a.head] >= 0) arcs.push_back({local[a.tail], local[a.head]});
  return {Digraph(static_cast<int>(original.size()), std::move(arcs)), std::move(original)};
}

int DistanceTable::eccentricity() const {
  int best = 0;
  for (int d : distance) best = std::max(best, d);
  return best;
}

VertexSet out_neighborhood(const Digraph& d, const VertexSet& s) {
  VertexSet out(d.order());
  for (Vertex u : s)
    for (Vertex v : d.out_neighbors(u)) out.insert(v);
  return out;
}

VertexSet closed_out_neighborhood(const Digraph& d, const VertexSet& s) { return s | out_neighborhood(d, s); }

VertexSet open_in_neighborhood(const Digraph& d, const VertexSet& s) {
  VertexSet in(d.order());
  for (Vertex v : s)
    for (Vertex u : d.in_neighbors(v))
      if (!s.contains(u)) in.insert(u);
  return in;
}

VertexSet closed_neighborhood(const Digraph& d, const VertexSet& s) {
  return closed_out_neighborhood(d, s) | open_in_neighborhood(d, s);
}

DistanceTable distances_within(const Digraph& d, const VertexSet& sources, const VertexSet& within) {
  DistanceTable table{std::vector<int>(d.order(), DistanceTable::kInfinite)};
  std::vector<Vertex> frontier;
  for (Vertex s : sources) {
    if (!within.contains(s)) continue;
    table.distance[s] = 0;
    frontier.push_back(s);
  }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    Vertex u = frontier[head];
    for (Vertex v : d.out_neighbors(u)) {
      if (!within.contains(v) || table.distance[v] != DistanceTable::kInfinite) continue;
      table.distance[v] = table.distance[u] + 1;
      frontier.push_back(v);
    }
  }
  return table;
}

DistanceTable distances_from(const Digraph& d, const VertexSet& sources) {
  if (sources.empty()) throw PreconditionError("distance from the empty set is undefined");
  return distances_within(d, sources, d.vertices());
}

std::optional<Arc> dependent_arc(const Digraph& d, const VertexSet& s) {
  for (Vertex u : s)
    for (Vertex v : d.out_neighbors(u))
      if (s.contains(v)) return Arc{u, v};
  return std::nullopt;
}

bool is_independent(const Digraph& d, const VertexSet& s) { return !dependent_arc(d, s).has_value(); }

DegreeStats degree_stats(const Digraph& d) {
  DegreeStats stats{0, 0, VertexSet(d.order())};
  stats.min_in = d.order() == 0 ? 0 : std::numeric_limits<int>::max();
  for (Vertex v = 0; v < d.order(); ++v) {
    stats.min_in = std::min(stats.min_in, d.in_degree(v));
    stats.max_out = std::max(stats.max_out, d.out_degree(v));
    if (d.in_degree(v) == 0) stats.sources.insert(v);
  }
  return stats;
}

SccPartition strongly_connected_components(const Digraph& d) {
  // Iterative Tarjan.
  const int n = d.order();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::vector<std::vector<Vertex>> components;
  int counter = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<std::pair<Vertex, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      auto outs = d.out_neighbors(v);
      if (next < outs.size()) {
        Vertex w = outs[next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<Vertex> members;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          members.push_back(w);
        } while (w != v);
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
      }
      Vertex finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }
  std::sort(components.begin(), components.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t c = 0; c < components.size(); ++c)
    for (Vertex v : components[c]) comp[v] = static_cast<int>(c);
  return {std::move(components), std::move(comp)};
}

int scc_diameter(const Digraph& d, std::span<const Vertex> component) {
  VertexSet members(d.order(), component);
  int best = 0;
  for (Vertex u : component) {
    auto table = distances_within(d, VertexSet(d.order(), {u}), members);
    for (Vertex v : component) best = std::max(best, table.at(v));
  }
  return best;
}

std::set<int> directed_cycle_lengths(const Digraph& d, int cap) {
  std::set<int> found;
  const int n = d.order();
  cap = std::min(cap, n);
  if (cap < 2) return found;
  std::vector<bool> on_path(n, false);

  // Simple cycles are enumerated once each, rooted at their smallest vertex.
  std::function<void(Vertex, Vertex, int)> extend = [&](Vertex root, Vertex v, int length) {
    for (Vertex w : d.out_neighbors(v)) {
      if (w == root) {
        found.insert(length + 1);
        continue;
      }
      if (w < root || on_path[w] || length + 1 >= cap) continue;
      on_path[w] = true;
      extend(root, w, length + 1);
      on_path[w] = false;
    }
  };
  for (Vertex root = 0; root < n; ++root) {
    if (static_cast<int>(found.size()) == cap - 1) break;
    on_path[root] = true;
    extend(root, root, 0);
    on_path[root] = false;
  }
  std::erase_if(found, [cap](int len) { return len > cap; });
  return found;
}

std::vector<std::vector<Vertex>> weak_components(const Digraph& d) {
  const int n = d.order();
  std::vector<int> seen(n, 0);
  std::vector<std::vector<Vertex>> result;
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<Vertex> members{root};
    seen[root] = 1;
    for (std::size_t head = 0; head < members.size(); ++head) {
      Vertex u = members[head];
      auto visit = [&](Vertex w) {
        if (!seen[w]) {
          seen[w] = 1;
          members.push_back(w);
        }
      };
      for (Vertex w : d.out_neighbors(u)) visit(w);
      for (Vertex w : d.in_neighbors(u)) visit(w);
    }
    std::sort(members.begin(), members.end());
    result.push_back(std::move(members));
  }
  return result;
}

std::optional<Bipartition> find_bipartition(const Digraph& d) {
  const int n = d.order();
  std::vector<int> colour(n, -1);
  for (Vertex root = 0; root < n; ++root) {
    if (colour[root] != -1) continue;
    colour[root] = 0;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      auto visit = [&](Vertex w) {
        if (colour[w] == -1) {
          colour[w] = 1 - colour[u];
          queue.push_back(w);
          return true;
        }
        return colour[w] != colour[u];
      };
      for (Vertex w : d.out_neighbors(u))
        if (!visit(w)) return std::nullopt;
      for (Vertex w : d.in_neighbors(u))
        if (!visit(w)) return std::nullopt;
    }
  }
  Bipartition b{VertexSet(n), VertexSet(n)};
  for (Vertex v = 0; v < n; ++v) (colour[v] == 0 ? b.u : b.v).insert(v);
  return b;
}

bool is_bipartition(const Digraph& d, const Bipartition& b) {
  if (b.u.universe() != d.order() || b.v.universe() != d.order()) return false;
  if (b.u.intersects(b.v) || (b.u | b.v).size() != d.order()) return false;
  return std::all_of(d.arcs().begin(), d.arcs().end(),
                     [&](const Arc& a) { return b.u.contains(a.tail) != b.u.contains(a.head); });
}

std::optional<std::vector<Vertex>> topological_order(const Digraph& d) {
  const int n = d.order();
  std::vector<int> remaining(n);
  std::set<Vertex> ready;
  for (Vertex v = 0; v < n; ++v) {
    remaining[v] = d.in_degree(v);
    if (remaining[v] == 0) ready.insert(v);
  }
  std::vector<Vertex> order;
  order.reserve(n);
  while (!ready.empty()) {
    Vertex v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (Vertex w : d.out_neighbors(v))
      if (--remaining[w] == 0) ready.insert(w);
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

bool is_acyclic(const Digraph& d) { return topological_order(d).has_value(); }

bool induces_acyclic(const Digraph& d, const VertexSet& s) {
  // Kahn's algorithm restricted to S.
  std::vector<int> remaining(d.order(), 0);
  std::vector<Vertex> ready;
  int total = 0;
  for (Vertex v : s) {
    ++total;
    for (Vertex u : d.in_neighbors(v))
      if (s.contains(u)) ++remaining[v];
    if (remaining[v] == 0) ready.push_back(v);
  }
  int removed = 0;
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    ++removed;
    for (Vertex w : d.out_neighbors(v))
      if (s.contains(w) && --remaining[w] == 0) ready.push_back(w);
  }
  return removed == total;
}

int isqrt(long long n) {
  if (n <= 0) return 0;
  auto r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return static_cast<int>(r);
}

}  // namespace qk
