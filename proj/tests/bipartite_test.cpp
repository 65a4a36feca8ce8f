#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qkernel/bipartite.hpp"
#include "qkernel/errors.hpp"
#include "qkernel/generators.hpp"
#include "qkernel/oracle.hpp"

using namespace qk;

namespace {

VertexSet set(int n, std::initializer_list<Vertex> m) { return VertexSet(n, m); }

Digraph with_arcs(const Digraph& base, int n, std::vector<Arc> extra) {
  auto arcs = base.arcs();
  arcs.insert(arcs.end(), extra.begin(), extra.end());
  return Digraph(n, arcs);
}

Bipartition sides(const Digraph& d) {
  auto b = find_bipartition(d);
  REQUIRE(b);
  return *b;
}

// C4 = u1 v1 u2 v2 = 0 1 2 3 with w hanging off v2 = 3.
Digraph c4_leaf() { return with_arcs(cycle(4), 5, {{3, 4}}); }

/// Random bipartite digraph (parity sides) with no directed cycle shorter
/// than `girth`: one random in-arc per vertex, then a few extra arcs, each
/// kept only if the girth survives. Arcless when some vertex gets stuck.
Digraph random_bipartite_girth(std::mt19937_64& rng, int n, int girth) {
  std::vector<Arc> arcs;
  for (int v = 0; v < n; ++v) {
    // each vertex gets an in-arc from the opposite parity
    std::vector<int> options;
    for (int u = 0; u < n; ++u)
      if (u % 2 != v % 2) options.push_back(u);
    std::shuffle(options.begin(), options.end(), rng);
    bool placed = false;
    for (int u : options) {
      arcs.push_back({u, v});
      if (directed_cycle_lengths(Digraph(n, arcs), girth - 1).empty()) {
        placed = true;
        break;
      }
      arcs.pop_back();
    }
    if (!placed) return Digraph(n, {});
  }
  for (int extra = 0; extra < n; ++extra) {
    int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
    if (u % 2 == v % 2) continue;
    bool dup = false;
    for (const Arc& a : arcs) dup = dup || (a.tail == u && a.head == v);
    if (dup) continue;
    arcs.push_back({u, v});
    if (!directed_cycle_lengths(Digraph(n, arcs), girth - 1).empty()) arcs.pop_back();
  }
  return Digraph(n, arcs);
}

}  // namespace

TEST_CASE("unicyclic_structure") {
  auto c6 = unicyclic_structure(cycle(6), sides(cycle(6)));
  CHECK(c6.half_length() == 3);
  CHECK(c6.ty == std::vector<int>{2, 2, 2});
  CHECK(c6.u(1) == 0);

  auto leaf = unicyclic_structure(c4_leaf(), sides(c4_leaf()));
  CHECK(leaf.half_length() == 2);
  CHECK(leaf.ty == std::vector<int>{2, 3});
  CHECK(leaf.type_of[4] == 2);

  CHECK_THROWS_AS(unicyclic_structure(cycle(2), sides(cycle(2))), PreconditionError);
  Digraph two = disjoint_union({cycle(4), cycle(4)});
  CHECK_THROWS_AS(unicyclic_structure(two, sides(two)), PreconditionError);
  Digraph extra = with_arcs(cycle(4), 4, {{0, 3}});
  CHECK_THROWS_AS(unicyclic_structure(extra, sides(extra)), PreconditionError);
}

TEST_CASE("type counts sum to n and bound distances") {
  for (int n = 4; n <= 8; ++n)
    for (int c = 4; c <= n; c += 2)
      oracle::for_each_unicyclic(n, c, [&](const Digraph& d) {
        auto b = sides(d);
        auto s = unicyclic_structure(d, b);
        int total = 0;
        for (int t : s.ty) {
          CHECK(t >= 2);
          total += t;
        }
        CHECK(total == n);
        auto dist = oracle::distances(d);
        for (Vertex w = 0; w < n; ++w) {
          int j = s.type_of[w];
          CHECK(dist[s.u(j)][w] <= s.ty[j - 1] - 1);
        }
      });
}

TEST_CASE("unicyclic_qkernel examples") {
  VertexSet c6 = unicyclic_qkernel(cycle(6), sides(cycle(6)), 3);
  // u_{1+mt} with m = 2: u_1 and u_3
  CHECK(c6 == set(6, {0, 4}));
  CHECK(oracle::is_qkernel(cycle(6), oracle::mask_of(c6), 3));

  CHECK(unicyclic_qkernel(c4_leaf(), sides(c4_leaf()), 3) == set(5, {2}));

  Digraph tail = with_arcs(cycle(4), 7, {{3, 4}, {4, 5}, {5, 6}});
  VertexSet t = unicyclic_qkernel(tail, sides(tail), 3);
  CHECK(oracle::is_qkernel(tail, oracle::mask_of(t), 3));
  CHECK(t.size() <= 2);
  CHECK(t.is_subset_of(sides(tail).u));

  CHECK_THROWS_AS(unicyclic_qkernel(cycle(6), sides(cycle(6)), 4), PreconditionError);
  CHECK_THROWS_AS(unicyclic_qkernel(cycle(2), sides(cycle(2)), 3), PreconditionError);
  CHECK_THROWS_AS(unicyclic_qkernel(cycle(4), sides(cycle(4)), 7), PreconditionError);
}

TEST_CASE("unicyclic_qkernel on random unicyclic digraphs, both side choices") {
  std::mt19937_64 rng(113);
  for (int t = 0; t < 400; ++t) {
    const int n = 6 + static_cast<int>(rng() % 15);
    const int c = 4 + 2 * static_cast<int>(rng() % ((n - 2) / 2));
    Digraph d = random_unicyclic(rng(), n, c);
    for (int q : {3, 5, 7, 9}) {
      if (2 * n < q + 3) continue;
      for (bool swap : {false, true}) {
        Bipartition b = sides(d);
        if (swap) std::swap(b.u, b.v);
        VertexSet k = unicyclic_qkernel(d, b, q);
        CHECK(k.is_subset_of(b.u));
        CHECK(oracle::is_qkernel(d, oracle::mask_of(k), q));
        CHECK((q + 3) * k.size() <= 2 * n);
      }
    }
  }
}

TEST_CASE("indegree_one_reduction") {
  auto c6 = indegree_one_reduction(cycle(6));
  CHECK(c6.reduced == cycle(6));
  CHECK(c6.components.size() == 1);

  auto chord = indegree_one_reduction(with_arcs(cycle(6), 6, {{0, 3}}));
  CHECK(chord.reduced.has_arc(0, 3));
  CHECK_FALSE(chord.reduced.has_arc(2, 3));
  for (Vertex v = 0; v < 6; ++v) CHECK(chord.reduced.in_degree(v) == 1);
  CHECK(chord.components.size() == 1);

  CHECK(indegree_one_reduction(disjoint_union({cycle(4), cycle(6)})).components.size() == 2);
  CHECK_THROWS_AS(indegree_one_reduction(Digraph(3, {{0, 1}, {1, 2}})), PreconditionError);
}

TEST_CASE("bipartite_qkernel examples") {
  VertexSet c6 = bipartite_qkernel(cycle(6), 3, 3);
  CHECK(c6.size() <= 2);
  CHECK(oracle::is_qkernel(cycle(6), oracle::mask_of(c6), 3));
  Digraph two = disjoint_union({cycle(6), cycle(6)});
  CHECK(bipartite_qkernel(two, 3, 3).size() <= 4);
  VertexSet c10 = bipartite_qkernel(cycle(10), 7, 5);
  CHECK(c10.size() <= 2);
  CHECK(oracle::is_qkernel(cycle(10), oracle::mask_of(c10), 7));

  CHECK_THROWS_AS(bipartite_qkernel(cycle(3), 3, 3), PreconditionError);
  CHECK(bipartite_qkernel(cycle(4), 3, 3).size() == 1);
  CHECK_THROWS_AS(bipartite_qkernel(cycle(6), 3, 4), PreconditionError);
  CHECK_THROWS_AS(bipartite_qkernel(Digraph(2, {{0, 1}}), 3, 3), PreconditionError);
}

TEST_CASE("bipartite_qkernel on random bipartite digraphs of large girth") {
  std::mt19937_64 rng(127);
  int tested = 0;
  for (int t = 0; t < 600 && tested < 200; ++t) {
    const int girth = 3 + static_cast<int>(rng() % 3);
    const int q = 2 * girth - 3 + static_cast<int>(rng() % 3);
    Digraph d = random_bipartite_girth(rng, 6 + static_cast<int>(rng() % 9), 2 * ((girth + 1) / 2));
    if (!degree_stats(d).source_free()) continue;
    ++tested;
    VertexSet k = bipartite_qkernel(d, q, girth);
    CHECK(k.is_subset_of(sides(d).u));
    CHECK(oracle::is_qkernel(d, oracle::mask_of(k), q));
    CHECK(k.size() * girth <= d.order());
  }
  CHECK(tested >= 100);
}

TEST_CASE("cycle_tails_lower_bound") {
  CHECK(cycle_tails_lower_bound(3, 3).order() == 9);
  CHECK(cycle_tails_lower_bound(5, 2).order() == 10);
  CHECK(cycle_tails_lower_bound(3, 1).order() == 3);
  for (int q : {3, 5})
    for (int l : {2, 3}) {
      Digraph d = cycle_tails_lower_bound(q, l);
      auto best = min_qkernel(d, q, sides(d).u);
      REQUIRE(best);
      CHECK(best->value >= l);
    }
}
