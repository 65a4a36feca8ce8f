#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qkernel/digraph.hpp"
#include "qkernel/digraph_io.hpp"
#include "qkernel/errors.hpp"
#include "qkernel/generators.hpp"
#include "qkernel/search.hpp"

using namespace qk;

namespace {

Digraph path3() { return Digraph(3, {{0, 1}, {1, 2}}); }
VertexSet set(int n, std::initializer_list<Vertex> m) { return VertexSet(n, m); }

}  // namespace

TEST_CASE("build_digraph accepts cycles and rejects bad arcs") {
  Digraph c2 = build_digraph(2, {{0, 1}, {1, 0}});
  CHECK(c2.arc_count() == 2);
  CHECK(c2 == cycle(2));
  CHECK(build_digraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}) == cycle(4));
  CHECK_THROWS_AS(build_digraph(3, {{0, 0}}), PreconditionError);
  CHECK_THROWS_AS(build_digraph(3, {{0, 3}}), PreconditionError);
  CHECK_THROWS_AS(build_digraph(3, {{0, 1}, {0, 1}}), PreconditionError);
  // arc order does not matter
  CHECK(build_digraph(3, {{1, 2}, {0, 1}}) == path3());
}

TEST_CASE("adjacency views stay consistent") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    Digraph d = oracle::random_digraph(rng, 1 + t % 9, 0.4);
    int out_sum = 0, in_sum = 0;
    for (Vertex v = 0; v < d.order(); ++v) {
      out_sum += d.out_degree(v);
      in_sum += d.in_degree(v);
      for (Vertex w : d.out_neighbors(v)) {
        bool back = false;
        for (Vertex u : d.in_neighbors(w)) back = back || u == v;
        CHECK(back);
      }
    }
    CHECK(out_sum == d.arc_count());
    CHECK(in_sum == d.arc_count());
  }
}

TEST_CASE("neighbourhoods") {
  Digraph c4 = cycle(4);
  CHECK(closed_out_neighborhood(c4, set(4, {0})) == set(4, {0, 1}));
  CHECK(closed_out_neighborhood(cycle(2), set(2, {0, 1})) == set(2, {0, 1}));
  CHECK(closed_out_neighborhood(c4, VertexSet(4)).empty());
  CHECK(open_in_neighborhood(c4, set(4, {1})) == set(4, {0}));
  CHECK(open_in_neighborhood(cycle(2), set(2, {0, 1})).empty());
  CHECK(open_in_neighborhood(digon_star(2), set(3, {0})) == set(3, {1, 2}));
}

TEST_CASE("neighbourhood invariants on random digraphs") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    Digraph d = oracle::random_digraph(rng, 1 + t % 8, 0.3);
    VertexSet s = VertexSet::from_mask(d.order(), rng() & ((1ULL << d.order()) - 1));
    CHECK(s.is_subset_of(closed_out_neighborhood(d, s)));
    CHECK_FALSE(open_in_neighborhood(d, s).intersects(s));
    CHECK(oracle::mask_of(closed_out_neighborhood(d, s)) == oracle::closed_out(d, oracle::mask_of(s)));
  }
}

TEST_CASE("distances_from") {
  auto c4 = distances_from(cycle(4), set(4, {0}));
  CHECK(c4.distance == std::vector<int>{0, 1, 2, 3});
  CHECK(distances_from(cycle(4), set(4, {0, 2})).distance == std::vector<int>{0, 1, 0, 1});
  auto split = distances_from(disjoint_union({cycle(2), cycle(2)}), set(4, {0}));
  CHECK(split.at(1) == 1);
  CHECK_FALSE(split.reachable(2));
  CHECK_FALSE(split.reachable(3));
  CHECK_THROWS_AS(distances_from(cycle(4), VertexSet(4)), PreconditionError);
}

TEST_CASE("distances agree with matrix powers and satisfy the arc step") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 150; ++t) {
    Digraph d = oracle::random_digraph(rng, 1 + t % 7, 0.3);
    auto all = oracle::distances(d);
    for (Vertex s = 0; s < d.order(); ++s) {
      auto table = distances_from(d, set(d.order(), {s}));
      for (Vertex v = 0; v < d.order(); ++v) {
        if (all[s][v] < 0) CHECK_FALSE(table.reachable(v));
        else CHECK(table.at(v) == all[s][v]);
      }
      for (const Arc& a : d.arcs())
        if (table.reachable(a.tail)) CHECK(table.at(a.head) <= table.at(a.tail) + 1);
    }
  }
}

TEST_CASE("is_independent") {
  CHECK(is_independent(cycle(4), set(4, {0, 2})));
  CHECK_FALSE(is_independent(cycle(2), set(2, {0, 1})));
  CHECK(is_independent(cycle(5), VertexSet(5)));
}

TEST_CASE("degree_stats") {
  auto c4 = degree_stats(cycle(4));
  CHECK(c4.min_in == 1);
  CHECK(c4.max_out == 1);
  CHECK(c4.source_free());
  auto p = degree_stats(path3());
  CHECK(p.min_in == 0);
  CHECK(p.sources == set(3, {0}));
  auto star = degree_stats(digon_star(2));
  CHECK(star.min_in == 1);
  CHECK(star.max_out == 2);
  CHECK(star.source_free());
}

TEST_CASE("strongly connected components") {
  auto c4 = strongly_connected_components(cycle(4));
  REQUIRE(c4.components.size() == 1);
  CHECK(scc_diameter(cycle(4), c4.components[0]) == 3);
  CHECK(strongly_connected_components(path3()).components.size() == 3);
  auto bp = strongly_connected_components(bidirected_path(5));
  REQUIRE(bp.components.size() == 1);
  CHECK(scc_diameter(bidirected_path(5), bp.components[0]) == 4);
}

TEST_CASE("SCC partition is refinement-stable") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 150; ++t) {
    Digraph d = oracle::random_digraph(rng, 2 + t % 8, 0.25);
    auto reach = oracle::distances(d);
    auto part = strongly_connected_components(d);
    for (const auto& comp : part.components) {
      auto sub = induced_subdigraph(d, VertexSet(d.order(), std::span<const Vertex>(comp)));
      CHECK(strongly_connected_components(sub.graph).components.size() == 1);
    }
    // same class iff mutually reachable
    for (Vertex u = 0; u < d.order(); ++u)
      for (Vertex v = 0; v < d.order(); ++v)
        CHECK((part.component_of[u] == part.component_of[v]) == (reach[u][v] >= 0 && reach[v][u] >= 0));
  }
}

TEST_CASE("directed_cycle_lengths") {
  CHECK(directed_cycle_lengths(cycle(6)) == std::set<int>{6});
  CHECK(directed_cycle_lengths(cycle(2)) == std::set<int>{2});
  auto arcs = cycle(8).arcs();
  arcs.push_back({0, 3});
  CHECK(directed_cycle_lengths(Digraph(8, arcs)) == std::set<int>{6, 8});
  CHECK(directed_cycle_lengths(path3()).empty());
  CHECK(directed_cycle_lengths(cycle(6), 5).empty());
}

TEST_CASE("cycle lengths match a DFS oracle and closed-walk reachability") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 200; ++t) {
    Digraph d = oracle::random_digraph(rng, 2 + t % 5, 0.35);
    auto lengths = directed_cycle_lengths(d);
    CHECK(lengths == oracle::cycle_lengths(d));
    // Some cycle passes through v iff v reaches itself by a nonempty walk,
    // i.e. (A (I+A)^{n-1})_{vv} > 0.
    const int n = d.order();
    Eigen::MatrixXi a = oracle::adjacency(d).cast<int>();
    Eigen::MatrixXi walk = oracle::saturate(a * oracle::reach_within(d, n - 1).cast<int>()).cast<int>();
    for (Vertex v = 0; v < n; ++v) {
      bool on_cycle = false;
      for (const auto& comp : strongly_connected_components(d).components)
        if (comp.size() > 1 && std::find(comp.begin(), comp.end(), v) != comp.end()) on_cycle = true;
      CHECK(on_cycle == (walk(v, v) > 0));
    }
  }
}

TEST_CASE("find_bipartition") {
  auto c6 = find_bipartition(cycle(6));
  REQUIRE(c6);
  CHECK(c6->u == set(6, {0, 2, 4}));
  CHECK(c6->v == set(6, {1, 3, 5}));
  CHECK_FALSE(find_bipartition(cycle(3)));
  auto star = find_bipartition(digon_star(2));
  REQUIRE(star);
  CHECK(star->u == set(3, {0}));
  CHECK(star->v == set(3, {1, 2}));
}

TEST_CASE("bipartitions found on random digraphs are valid") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    Digraph d = oracle::random_digraph(rng, 1 + t % 8, 0.2);
    auto b = find_bipartition(d);
    bool odd_cycle = false;
    for (int len : oracle::cycle_lengths(d)) odd_cycle = odd_cycle || len % 2 == 1;
    if (odd_cycle) CHECK_FALSE(b);
    if (b) {
      CHECK(is_bipartition(d, *b));
      CHECK((b->u | b->v) == d.vertices());
      CHECK_FALSE(b->u.intersects(b->v));
    }
  }
}

TEST_CASE("text format round trip") {
  Digraph d(4, {{3, 0}, {0, 1}, {1, 2}, {2, 3}});
  std::string text = to_text(d);
  CHECK(text == "n 4\n0 1\n1 2\n2 3\n3 0\n");
  CHECK(parse_digraph("# comment\n\nn 4\n2 3\n0 1\n1 2\n3 0\n") == d);
}

TEST_CASE("parse errors carry line and column") {
  auto expect = [](const std::string& text, int line, int column) {
    try {
      parse_digraph(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
    }
  };
  expect("n 3\n0 0\n", 2, 1);
  expect("n 3\n0 1\n0 5\n", 3, 3);
  expect("n 3\n0 1\n0 1\n", 3, 1);
  expect("m 3\n", 1, 1);
  expect("n 3\n0 x\n", 2, 3);
  expect("", 1, 1);
}

TEST_CASE("exhaustive enumeration counts") {
  int all2 = 0, sf2 = 0;
  enumerate_digraphs(2, Filter{}, [&](const Digraph&) { ++all2; });
  Filter source_free;
  source_free.source_free = true;
  enumerate_digraphs(2, source_free, [&](const Digraph& d) {
    ++sf2;
    CHECK(d == cycle(2));
  });
  CHECK(all2 == 4);
  CHECK(sf2 == 1);

  int all3 = 0, sf3 = 0;
  enumerate_digraphs(3, Filter{}, [&](const Digraph&) { ++all3; });
  enumerate_digraphs(3, source_free, [&](const Digraph&) { ++sf3; });
  CHECK(all3 == 64);
  // Inclusion-exclusion over the set Z forced to in-degree 0: every other
  // vertex picks any of the 2^{n-1} in-arc sets. Sum_k (-1)^k C(n,k) (2^{n-1})^{n-k}.
  long long expect = 0;
  const long long binom[] = {1, 3, 3, 1};
  for (int k = 0; k <= 3; ++k) expect += (k % 2 ? -1 : 1) * binom[k] * (1LL << (2 * (3 - k)));
  CHECK(sf3 == expect);
  CHECK_THROWS_AS(enumerate_digraphs(6, Filter{}, [](const Digraph&) {}), PreconditionError);
}
