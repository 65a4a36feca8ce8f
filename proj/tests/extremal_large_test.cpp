#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qkernel/errors.hpp"
#include "qkernel/generators.hpp"
#include "qkernel/large.hpp"
#include "qkernel/oracle.hpp"
#include "qkernel/search.hpp"

using namespace qk;

namespace {

VertexSet set(int n, std::initializer_list<Vertex> m) { return VertexSet(n, m); }
oracle::Mask full(int n) { return (oracle::Mask{1} << n) - 1; }

bool is_quasikernel(const Digraph& d, const VertexSet& s) { return oracle::is_qkernel(d, oracle::mask_of(s), 2); }
int cover(const Digraph& d, const VertexSet& s) { return __builtin_popcountll(oracle::closed_out(d, oracle::mask_of(s))); }

void for_each_small(int n_max, const std::function<void(const Digraph&)>& visit) {
  for (int n = 1; n <= n_max; ++n) enumerate_digraphs(n, Filter{}, visit);
}

}  // namespace

TEST_CASE("greedy_acyclic_set") {
  CHECK(greedy_acyclic_set(cycle(3)) == set(3, {0, 2}));
  CHECK(greedy_acyclic_set(Digraph(5, {})) == VertexSet::full(5));
  CHECK(greedy_acyclic_set(bidirected_clique(3)).size() >= 1);

  std::mt19937_64 rng(71);
  for (int t = 0; t < 400; ++t) {
    Digraph d = oracle::random_digraph(rng, 1 + t % 12, 0.3);
    VertexSet a = greedy_acyclic_set(d);
    CHECK(oracle::acyclic(d, oracle::mask_of(a)));
    CHECK(a.size() * (degree_stats(d).max_out + 1) >= d.order());
  }
}

TEST_CASE("greedy_half_covering_mis") {
  CHECK(greedy_half_covering_mis(cycle(3)) == set(3, {0}));
  CHECK(greedy_half_covering_mis(cycle(4)) == set(4, {0, 2}));
  CHECK(greedy_half_covering_mis(Digraph(4, {})) == VertexSet::full(4));

  std::mt19937_64 rng(73);
  for (int t = 0; t < 400; ++t) {
    Digraph d = oracle::random_digraph(rng, 1 + t % 12, 0.3);
    VertexSet s = greedy_half_covering_mis(d);
    oracle::Mask m = oracle::mask_of(s);
    REQUIRE(oracle::independent(d, m));
    for (Vertex v = 0; v < d.order(); ++v)
      if (!s.contains(v)) CHECK_FALSE(oracle::independent(d, m | (1ULL << v)));
    CHECK(2 * cover(d, s) >= d.order());
  }
}

TEST_CASE("three_kernel_large examples") {
  auto c3 = three_kernel_large(cycle(3));
  CHECK(c3.members.size() == 1);
  CHECK(c3.radius == 2);
  auto c6 = three_kernel_large(cycle(6));
  CHECK(c6.radius == 2);
  CHECK(cover(cycle(6), c6.members) == 6);
  auto star = three_kernel_large(digon_star(3));
  CHECK(3 * cover(digon_star(3), star.members) >= 4);
}

TEST_CASE("three_kernel_large and large_quasikernel on every digraph n <= 5") {
  long long checked = 0;
  for_each_small(5, [&](const Digraph& d) {
    auto three = three_kernel_large(d);
    REQUIRE(oracle::is_qkernel(d, oracle::mask_of(three.members), three.radius));
    CHECK(3 * cover(d, three.members) >= d.order());
    VertexSet large = large_quasikernel(d);
    REQUIRE(is_quasikernel(d, large));
    const long long c = cover(d, large);
    CHECK(c * c * c >= d.order());
    ++checked;
  });
  CHECK(checked == 1 + 4 + 64 + 4096 + 1048576);
}

TEST_CASE("quasikernel_covering") {
  VertexSet q = quasikernel_covering(cycle(4), set(4, {0, 1, 2}));
  CHECK(is_quasikernel(cycle(4), q));
  CHECK(set(4, {0, 1, 2}).is_subset_of(closed_out_neighborhood(cycle(4), q)));
  CHECK(is_quasikernel(cycle(5), quasikernel_covering(cycle(5), VertexSet(5))));
  Digraph path(3, {{0, 1}, {1, 2}});
  CHECK(quasikernel_covering(path, VertexSet::full(3)) == set(3, {0, 2}));
  CHECK_THROWS_AS(quasikernel_covering(cycle(3), VertexSet::full(3)), PreconditionError);
}

TEST_CASE("quasikernel_covering property on random acyclic sets") {
  std::mt19937_64 rng(79);
  int tested = 0;
  while (tested < 1000) {
    Digraph d = oracle::random_digraph(rng, 1 + static_cast<int>(rng() % 11), 0.3);
    oracle::Mask a = rng() & full(d.order());
    if (!oracle::acyclic(d, a)) continue;
    ++tested;
    VertexSet q = quasikernel_covering(d, VertexSet::from_mask(d.order(), a));
    CHECK(is_quasikernel(d, q));
    CHECK((a & ~oracle::closed_out(d, oracle::mask_of(q))) == 0);
  }
}

TEST_CASE("quasikernel_members") {
  CHECK(quasikernel_members(cycle(4)) == VertexSet::full(4));
  CHECK(quasikernel_members(cycle(3)) == VertexSet::full(3));
  CHECK(quasikernel_members(Digraph(3, {{0, 1}, {1, 2}})) == set(3, {0, 2}));

  std::mt19937_64 rng(83);
  for (int t = 0; t < 200; ++t) {
    Digraph d = oracle::random_digraph(rng, 1 + t % 8, 0.3);
    auto reach = oracle::reach_within(d, 2);
    oracle::Mask members = 0;
    for (oracle::Mask s = 0; s <= full(d.order()); ++s)
      if (oracle::is_qkernel(d, s, 2, reach)) members |= s;
    CHECK(oracle::mask_of(quasikernel_members(d)) == members);
  }
}

TEST_CASE("large_quasikernel examples") {
  CHECK(cover(cycle(3), large_quasikernel(cycle(3))) == 2);
  Digraph two = disjoint_union({cycle(2), cycle(2)});
  CHECK(cover(two, large_quasikernel(two)) >= 2);
  CHECK(large_quasikernel(Digraph(8, {})) == VertexSet::full(8));
}

TEST_CASE("large_quasikernel on random digraphs up to n = 12") {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 300; ++t) {
    Digraph d = oracle::random_digraph(rng, 6 + t % 7, t % 2 ? 0.15 : 0.4);
    VertexSet q = large_quasikernel(d);
    CHECK(is_quasikernel(d, q));
    const long long c = cover(d, q);
    CHECK(c * c * c >= d.order());
  }
}

TEST_CASE("pendant_blowup") {
  Digraph c2 = pendant_blowup(cycle(2), 1);
  CHECK(c2.order() == 4);
  CHECK(c2.arc_count() == 4);
  Digraph c3 = pendant_blowup(cycle(3), 2);
  CHECK(c3.order() == 9);
  CHECK(c3.arc_count() == 9);
  CHECK_THROWS_AS(pendant_blowup(cycle(3), 0), PreconditionError);
}

TEST_CASE("blow-up inequality chain on source-free digraphs n <= 4") {
  Filter sf;
  sf.source_free = true;
  int checked = 0;
  for (int n = 2; n <= 4; ++n)
    enumerate_digraphs(n, sf, [&](const Digraph& d) {
      const int k = n + 1;
      Digraph blown = pendant_blowup(d, k);
      auto best = min_qkernel(blown, 2);
      REQUIRE(best);
      VertexSet core(n);
      for (Vertex v : best->witness)
        if (v < n) core.insert(v);
      CHECK(is_quasikernel(d, core));
      const int c = cover(d, core);
      CHECK(best->value >= k * (n - c));
      // |N+[Q]| >= ceil(n/2 - n/(2k))
      CHECK(2 * k * c >= (k - 1) * n);
      ++checked;
    });
  CHECK(checked > 0);
}
