#include "qkernel/bipartite.hpp"

#include <algorithm>
#include <string>

#include "qkernel/errors.hpp"
#include "qkernel/kernel.hpp"

namespace qk {

namespace {

// A unicyclic digraph living on a subset of a larger vertex universe, so the
// recursion can delete and rewire vertices without relabeling.
struct Instance {
  VertexSet alive;
  std::vector<Vertex> parent;
  VertexSet u_side;
};

struct Shape {
  std::vector<Vertex> cycle;
  std::vector<int> type_of;
  std::vector<int> depth;
  // Whether the path from the cycle to w starts at v_j rather than u_j.
  std::vector<bool> via_v;
  std::vector<int> ty;
  std::vector<std::vector<Vertex>> children;

  int half_length() const { return static_cast<int>(cycle.size()) / 2; }
  Vertex u(int j) const { return cycle[2 * (j - 1)]; }
  Vertex v(int j) const { return cycle[2 * (j - 1) + 1]; }
};

std::string arc_text(Vertex a, Vertex b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

Shape analyse(const Instance& inst) {
  const int universe = inst.alive.universe();
  Shape shape;
  shape.children.assign(universe, {});
  shape.type_of.assign(universe, 0);
  shape.depth.assign(universe, -1);
  shape.via_v.assign(universe, false);
  for (Vertex w : inst.alive) {
    Vertex p = inst.parent[w];
    if (p < 0 || !inst.alive.contains(p)) throw PreconditionError("vertex " + std::to_string(w) + " has no in-neighbour");
    if (inst.u_side.contains(p) == inst.u_side.contains(w))
      throw PreconditionError("arc " + arc_text(p, w) + " does not cross the bipartition");
    shape.children[p].push_back(w);
  }
  if (inst.alive.empty()) throw PreconditionError("unicyclic digraph must be nonempty");

  // Walking up parents from any vertex ends on the cycle.
  std::vector<bool> seen(universe, false);
  Vertex x = inst.alive.lowest();
  while (!seen[x]) {
    seen[x] = true;
    x = inst.parent[x];
  }
  VertexSet on_cycle(universe);
  for (Vertex y = x; !on_cycle.contains(y); y = inst.parent[y]) on_cycle.insert(y);
  if (on_cycle.size() == 2) throw PreconditionError("directed cycle has length 2");

  Vertex start = (on_cycle & inst.u_side).lowest();
  for (Vertex cur = start; static_cast<int>(shape.cycle.size()) < on_cycle.size();) {
    shape.cycle.push_back(cur);
    for (Vertex c : shape.children[cur])
      if (on_cycle.contains(c)) {
        cur = c;
        break;
      }
  }

  const int ell = shape.half_length();
  shape.ty.assign(ell, 0);
  std::vector<Vertex> queue;
  for (int i = 0; i < static_cast<int>(shape.cycle.size()); ++i) {
    Vertex c = shape.cycle[i];
    shape.depth[c] = 0;
    shape.type_of[c] = i / 2 + 1;
    shape.via_v[c] = i % 2 == 1;
    queue.push_back(c);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex p = queue[head];
    for (Vertex c : shape.children[p]) {
      if (on_cycle.contains(c)) continue;
      shape.depth[c] = shape.depth[p] + 1;
      shape.type_of[c] = shape.type_of[p];
      shape.via_v[c] = shape.via_v[p];
      queue.push_back(c);
    }
  }
  if (static_cast<int>(queue.size()) != inst.alive.size())
    throw PreconditionError("underlying graph is not connected");
  for (Vertex w : inst.alive) ++shape.ty[shape.type_of[w] - 1];
  return shape;
}

Relabeled instance_digraph(const Instance& inst) {
  std::vector<Arc> arcs;
  for (Vertex w : inst.alive) arcs.push_back({inst.parent[w], w});
  return induced_subdigraph(Digraph(inst.alive.universe(), std::move(arcs)), inst.alive);
}

void check_result(const Instance& inst, const VertexSet& q_set, int q) {
  if (!q_set.is_subset_of(inst.u_side & inst.alive)) throw VerificationError("unicyclic_qkernel: result leaves U");
  const int n = inst.alive.size();
  if ((q + 3) * q_set.size() > 2 * n)
    throw VerificationError("unicyclic_qkernel: " + q_set.to_string() + " exceeds 2n/(q+3) for n = " +
                            std::to_string(n));
  auto local = instance_digraph(inst);
  require_q_kernel(local.graph, local.restrict(q_set), q, "unicyclic_qkernel");
}

VertexSet solve(const Instance& inst, int q) {
  const Shape shape = analyse(inst);
  const int universe = inst.alive.universe();
  const int n = inst.alive.size();
  const int ell = shape.half_length();
  VertexSet q_set(universe);

  // Phase 1: a vertex at distance ≥ q from the cycle.
  Vertex far = inst.alive.lowest();
  for (Vertex w : inst.alive)
    if (shape.depth[w] > shape.depth[far]) far = w;
  if (shape.depth[far] >= q) {
    const int reach = (q + 1) / 2;
    Vertex anchor = far;
    for (int i = 0; i < reach; ++i) anchor = inst.parent[anchor];
    VertexSet removed(universe);
    std::vector<std::pair<Vertex, int>> stack{{anchor, 0}};
    while (!stack.empty()) {
      auto [x, dist] = stack.back();
      stack.pop_back();
      removed.insert(x);
      if (dist < reach)
        for (Vertex c : shape.children[x]) stack.push_back({c, dist + 1});
    }
    Instance smaller = inst;
    smaller.alive -= removed;
    q_set = solve(smaller, q);
    q_set.insert(inst.u_side.contains(anchor) ? anchor : inst.parent[anchor]);
    check_result(inst, q_set, q);
    return q_set;
  }

  // Phase 2: a heavy type.
  for (int j = 1; j <= ell; ++j) {
    const int heavy = shape.ty[j - 1];
    if (2 * heavy < q + 3) continue;
    if (2 * (n - heavy) <= q + 1) {
      q_set.insert(shape.u(j));
    } else if (ell == 2) {
      q_set.insert(shape.u(1));
      q_set.insert(shape.u(2));
    } else {
      Instance smaller = inst;
      for (Vertex w : inst.alive)
        if (shape.type_of[w] == j) smaller.alive.erase(w);
      const int next = j % ell + 1;
      const int prev = (j + ell - 2) % ell + 1;
      smaller.parent[shape.u(next)] = shape.v(prev);
      q_set = solve(smaller, q);
      q_set.insert(shape.u(j));
    }
    check_result(inst, q_set, q);
    return q_set;
  }

  // Phase 3: every m-th u_j, when the budget allows ⌈ℓ/m⌉ of them.
  const int m = (q + 3 + 3) / 4;
  const int chunks_up = (ell + m - 1) / m;
  if (2 * n >= (q + 3) * chunks_up) {
    for (int t = 0; t < chunks_up; ++t) q_set.insert(shape.u(1 + m * t));
    check_result(inst, q_set, q);
    return q_set;
  }

  // Phase 4: relabel so the lightest pair is last, then take ⌊ℓ/m⌋ of them.
  const int remainder = ell % m;
  if (remainder == 0) throw VerificationError("unicyclic_qkernel: ℓ ≡ 0 mod m in the final phase");
  const int lightest = static_cast<int>(std::min_element(shape.ty.begin(), shape.ty.end()) - shape.ty.begin()) + 1;
  for (int t = 0; t < ell / m; ++t) {
    const int j = (lightest + m * t) % ell + 1;  // rotated index 1 + mt
    q_set.insert(shape.u(j));
  }
  check_result(inst, q_set, q);
  return q_set;
}

Instance instance_of(const Digraph& d, const Bipartition& b) {
  for (Vertex v = 0; v < d.order(); ++v)
    if (d.in_degree(v) != 1)
      throw PreconditionError("vertex " + std::to_string(v) + " has in-degree " + std::to_string(d.in_degree(v)) +
                              ", not 1");
  if (b.u.universe() != d.order() || b.v.universe() != d.order() || !is_bipartition(d, b))
    throw PreconditionError("the given sets are not a bipartition of the digraph");
  Instance inst{d.vertices(), std::vector<Vertex>(d.order(), -1), b.u};
  for (Vertex v = 0; v < d.order(); ++v) inst.parent[v] = d.in_neighbors(v)[0];
  return inst;
}

}  // namespace

UnicyclicStructure unicyclic_structure(const Digraph& d, const Bipartition& b) {
  Instance inst = instance_of(d, b);
  Shape shape = analyse(inst);
  UnicyclicStructure out{shape.cycle, inst.parent, shape.type_of, shape.ty, shape.depth};
  for (Vertex w = 0; w < d.order(); ++w) {
    const int j = shape.type_of[w];
    const int from_u = shape.depth[w] + (shape.via_v[w] ? 1 : 0);
    if (from_u > shape.ty[j - 1] - 1)
      throw VerificationError("unicyclic_structure: dist(u_j, w) exceeds ty(j) - 1 at vertex " + std::to_string(w));
  }
  return out;
}

VertexSet unicyclic_qkernel(const Digraph& d, const Bipartition& b, int q) {
  if (q < 3 || q % 2 == 0) throw PreconditionError("unicyclic_qkernel: q must be odd and at least 3, got " + std::to_string(q));
  Instance inst = instance_of(d, b);
  analyse(inst);
  if (2 * d.order() < q + 3)
    throw PreconditionError("unicyclic_qkernel: need n >= (q+3)/2, got n = " + std::to_string(d.order()));
  return solve(inst, q);
}

IndegreeOneReduction indegree_one_reduction(const Digraph& d, const std::optional<Bipartition>& sides) {
  std::vector<Arc> kept;
  for (Vertex v = 0; v < d.order(); ++v) {
    if (d.in_degree(v) == 0) throw PreconditionError("indegree_one_reduction: vertex " + std::to_string(v) + " is a source");
    kept.push_back({d.in_neighbors(v)[0], v});
  }
  IndegreeOneReduction out{Digraph(d.order(), std::move(kept)), {}};
  for (const auto& members : weak_components(out.reduced)) {
    VertexSet keep(d.order(), std::span<const Vertex>(members));
    ReducedComponent component{induced_subdigraph(out.reduced, keep), std::nullopt};
    if (sides)
      component.sides = Bipartition{component.part.restrict(sides->u), component.part.restrict(sides->v)};
    else
      component.sides = find_bipartition(component.part.graph);
    out.components.push_back(std::move(component));
  }
  return out;
}

VertexSet bipartite_qkernel(const Digraph& d, int q, int girth) {
  if (q < 3) throw PreconditionError("bipartite_qkernel: q must be at least 3, got " + std::to_string(q));
  if (girth < 3) throw PreconditionError("bipartite_qkernel: girth bound must be at least 3, got " + std::to_string(girth));
  if (2 * girth > q + 3)
    throw PreconditionError("bipartite_qkernel: girth bound " + std::to_string(girth) + " exceeds (q+3)/2");
  if (auto stats = degree_stats(d); !stats.source_free())
    throw PreconditionError("bipartite_qkernel: vertex " + std::to_string(stats.sources.lowest()) + " is a source");
  auto sides = find_bipartition(d);
  if (!sides) throw PreconditionError("bipartite_qkernel: digraph is not bipartite");
  if (auto short_cycles = directed_cycle_lengths(d, girth - 1); !short_cycles.empty())
    throw PreconditionError("bipartite_qkernel: digraph has a directed " + std::to_string(*short_cycles.begin()) +
                            "-cycle, shorter than " + std::to_string(girth));

  const int odd_q = 2 * girth - 3;
  auto reduction = indegree_one_reduction(d, sides);
  VertexSet q_set(d.order());
  for (const auto& component : reduction.components) {
    const auto& graph = component.part.graph;
    if (2 * graph.order() < odd_q + 3)
      throw VerificationError("bipartite_qkernel: a reduced component is smaller than its cycle bound");
    q_set |= component.part.lift(unicyclic_qkernel(graph, *component.sides, odd_q), d.order());
  }
  if (!q_set.is_subset_of(sides->u)) throw VerificationError("bipartite_qkernel: result leaves U");
  if (static_cast<long long>(q_set.size()) * girth > d.order())
    throw VerificationError("bipartite_qkernel: result exceeds n/girth");
  require_q_kernel(d, q_set, q, "bipartite_qkernel");
  return q_set;
}

Digraph cycle_tails_lower_bound(int q, int half_length) {
  if (q < 3) throw PreconditionError("cycle_tails_lower_bound: q must be at least 3");
  if (half_length < 1) throw PreconditionError("cycle_tails_lower_bound: half length must be at least 1");
  const int cycle = 2 * half_length;
  std::vector<Arc> arcs;
  for (int i = 0; i < cycle; ++i) arcs.push_back({i, (i + 1) % cycle});
  int next = cycle;
  for (int i = 0; i < half_length; ++i) {
    Vertex prev = 2 * i + 1;
    for (int step = 0; step < q - 2; ++step) {
      arcs.push_back({prev, next});
      prev = next++;
    }
  }
  return Digraph(next, std::move(arcs));
}

}  // namespace qk
