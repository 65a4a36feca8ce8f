#include "qkernel/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>

#include "qkernel/errors.hpp"

namespace qk {

namespace {

using Mask = std::uint64_t;

inline Mask bit(int v) { return Mask{1} << v; }
inline int popcount(Mask m) { return std::popcount(m); }
inline int lowest_bit(Mask m) { return std::countr_zero(m); }
// Vertices strictly above v.
inline Mask above(int v) { return v >= 63 ? 0 : ~((bit(v + 1)) - 1); }

// Bitmask view of a digraph for the exponential searches.
struct MaskGraph {
  int n = 0;
  Mask all = 0;
  std::vector<Mask> out, in, touch;

  explicit MaskGraph(const Digraph& d) : n(d.order()), out(n, 0), in(n, 0), touch(n, 0) {
    if (n > kOracleMaxOrder)
      throw PreconditionError("oracle limited to " + std::to_string(kOracleMaxOrder) + " vertices, got " +
                              std::to_string(n));
    all = n == 64 ? ~Mask{0} : bit(n) - 1;
    for (const Arc& a : d.arcs()) {
      out[a.tail] |= bit(a.head);
      in[a.head] |= bit(a.tail);
    }
    for (int v = 0; v < n; ++v) touch[v] = out[v] | in[v];
  }

  Mask out_of(Mask s) const {
    Mask r = 0;
    for (Mask m = s; m; m &= m - 1) r |= out[lowest_bit(m)];
    return r;
  }

  bool independent(Mask s) const {
    for (Mask m = s; m; m &= m - 1)
      if (out[lowest_bit(m)] & s) return false;
    return true;
  }

  // Vertices within distance q of v.
  Mask forward_ball(int v, int q) const {
    Mask seen = bit(v), frontier = bit(v);
    for (int step = 0; step < q && frontier; ++step) {
      Mask next = out_of(frontier) & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen;
  }

  bool acyclic(Mask s) const {
    // Peel vertices with no in-neighbour left inside s.
    Mask left = s;
    bool progress = true;
    while (left && progress) {
      progress = false;
      for (Mask m = left; m; m &= m - 1) {
        int v = lowest_bit(m);
        if (!(in[v] & left)) {
          left &= ~bit(v);
          progress = true;
        }
      }
    }
    return left == 0;
  }
};

VertexSet to_set(int n, Mask m) { return VertexSet::from_mask(n, m); }

// Hitting-set formulation: Q is a q-kernel iff Q is independent and meets
// ball[w] = {u : dist(u,w) ≤ q} for every w.
class KernelSearch {
 public:
  KernelSearch(const MaskGraph& g, int q) : g_(g), reach_(g.n), ball_(g.n, 0) {
    if (q < 1) throw PreconditionError("kernel radius must be at least 1");
    for (int v = 0; v < g.n; ++v) {
      reach_[v] = g.forward_ball(v, q);
      for (Mask m = reach_[v]; m; m &= m - 1) ball_[lowest_bit(m)] |= bit(v);
    }
  }

  Mask reach_of(Mask s) const {
    Mask r = 0;
    for (Mask m = s; m; m &= m - 1) r |= reach_[lowest_bit(m)];
    return r;
  }

  bool is_kernel(Mask s) const { return g_.independent(s) && reach_of(s) == g_.all; }

  // Whether some independent extension of `chosen` by at most `budget`
  // vertices of `available` covers everything.
  bool feasible(Mask chosen, Mask available, int budget) const {
    Mask uncovered = g_.all & ~reach_of(chosen);
    return extend(uncovered, available, budget);
  }

  // Minimum q-kernel containing `forced` inside `allowed`, lexicographically least.
  std::optional<VertexSet> minimum(Mask forced, Mask allowed) const {
    if (!g_.independent(forced)) return std::nullopt;
    Mask available = allowed & ~forced & ~neighbours(forced);
    int extra = -1;
    for (int budget = 0; budget <= popcount(available); ++budget)
      if (feasible(forced, available, budget)) {
        extra = budget;
        break;
      }
    if (extra < 0) return std::nullopt;

    // Fix members one at a time, smallest feasible vertex first.
    Mask chosen = forced;
    int left = extra;
    while (reach_of(chosen) != g_.all) {
      bool placed = false;
      for (Mask m = available; m; m &= m - 1) {
        int v = lowest_bit(m);
        Mask later = available & above(v) & ~g_.touch[v];
        if (feasible(chosen | bit(v), later, left - 1)) {
          chosen |= bit(v);
          available = later;
          --left;
          placed = true;
          break;
        }
      }
      if (!placed) throw VerificationError("min_qkernel: witness reconstruction failed");
    }
    return to_set(g_.n, chosen);
  }

 private:
  Mask neighbours(Mask s) const {
    Mask r = 0;
    for (Mask m = s; m; m &= m - 1) r |= g_.touch[lowest_bit(m)];
    return r;
  }

  bool extend(Mask uncovered, Mask available, int budget) const {
    if (!uncovered) return true;
    if (budget <= 0) return false;
    int best_gain = 0;
    for (Mask m = available; m; m &= m - 1) best_gain = std::max(best_gain, popcount(reach_[lowest_bit(m)] & uncovered));
    if (static_cast<long long>(best_gain) * budget < popcount(uncovered)) return false;

    // Branch on the uncovered vertex with the fewest candidate coverers.
    int pick = -1, fewest = 65;
    for (Mask m = uncovered; m; m &= m - 1) {
      int w = lowest_bit(m);
      int options = popcount(ball_[w] & available);
      if (options < fewest) {
        fewest = options;
        pick = w;
        if (options == 0) return false;
      }
    }
    Mask candidates = ball_[pick] & available;
    for (Mask m = candidates; m; m &= m - 1) {
      int c = lowest_bit(m);
      if (extend(uncovered & ~reach_[c], available & ~bit(c) & ~g_.touch[c], budget - 1)) return true;
      available &= ~bit(c);
    }
    return false;
  }

  const MaskGraph& g_;
  std::vector<Mask> reach_;
  std::vector<Mask> ball_;
};

// Every independent set, in lexicographic order of member lists.
void for_each_independent(const MaskGraph& g, const std::function<void(Mask)>& visit) {
  std::function<void(Mask, Mask)> walk = [&](Mask s, Mask candidates) {
    visit(s);
    for (Mask m = candidates; m; m &= m - 1) {
      int v = lowest_bit(m);
      walk(s | bit(v), candidates & above(v) & ~g.touch[v]);
    }
  };
  walk(0, g.all);
}

void for_each_qkernel(const MaskGraph& g, int q, const std::function<void(Mask)>& visit) {
  KernelSearch search(g, q);
  for_each_independent(g, [&](Mask s) {
    if (search.reach_of(s) == g.all) visit(s);
  });
}

}  // namespace

std::optional<OracleAnswer> min_qkernel(const Digraph& d, int q, const std::optional<VertexSet>& restrict) {
  MaskGraph g(d);
  KernelSearch search(g, q);
  if (restrict && restrict->universe() != g.n) throw PreconditionError("min_qkernel: restriction universe mismatch");
  Mask allowed = restrict ? restrict->mask() : g.all;
  auto witness = search.minimum(0, allowed);
  if (!witness) return std::nullopt;
  return OracleAnswer{witness->size(), *witness};
}

std::optional<VertexSet> qkernel_containing(const Digraph& d, int q, const VertexSet& forced) {
  MaskGraph g(d);
  KernelSearch search(g, q);
  return search.minimum(forced.mask(), g.all);
}

std::vector<VertexSet> all_qkernels(const Digraph& d, int q) {
  MaskGraph g(d);
  std::vector<VertexSet> out;
  for_each_qkernel(g, q, [&](Mask s) { out.push_back(to_set(g.n, s)); });
  return out;
}

VertexSet qkernel_members(const Digraph& d, int q) {
  MaskGraph g(d);
  Mask members = 0;
  for_each_qkernel(g, q, [&](Mask s) { members |= s; });
  return to_set(g.n, members);
}

namespace {

// Maximizes score(Q) over quasikernels; first maximum in lex order wins.
OracleAnswer best_quasikernel(const Digraph& d, const std::function<int(const MaskGraph&, Mask)>& score) {
  MaskGraph g(d);
  OracleAnswer best{-1, VertexSet(g.n)};
  for_each_qkernel(g, 2, [&](Mask s) {
    int value = score(g, s);
    if (value > best.value) best = {value, to_set(g.n, s)};
  });
  return best;
}

}  // namespace

OracleAnswer max_covering_quasikernel(const Digraph& d) {
  return best_quasikernel(d, [](const MaskGraph& g, Mask s) { return popcount(s | g.out_of(s)); });
}

OracleAnswer max_excess_quasikernel(const Digraph& d) {
  return best_quasikernel(d, [](const MaskGraph& g, Mask s) { return 2 * popcount(s | g.out_of(s)) - popcount(s); });
}

bool has_disjoint_qkernels(const Digraph& d, int r, int q) {
  if (r < 1) throw PreconditionError("has_disjoint_qkernels: r must be positive");
  MaskGraph g(d);
  std::vector<Mask> kernels;
  for_each_qkernel(g, q, [&](Mask s) { kernels.push_back(s); });
  std::function<bool(std::size_t, Mask, int)> pick = [&](std::size_t from, Mask used, int need) {
    if (need == 0) return true;
    for (std::size_t i = from; i < kernels.size(); ++i)
      if (!(kernels[i] & used) && pick(i + 1, used | kernels[i], need - 1)) return true;
    return false;
  };
  return pick(0, 0, r);
}

OracleAnswer max_independent_reach(const Digraph& d) {
  MaskGraph g(d);
  OracleAnswer best{-1, VertexSet(g.n)};
  for_each_independent(g, [&](Mask s) {
    int value = popcount(g.out_of(s));
    if (value > best.value) best = {value, to_set(g.n, s)};
  });
  return best;
}

OracleAnswer max_independent_set(const Digraph& d) {
  MaskGraph g(d);
  OracleAnswer best{-1, VertexSet(g.n)};
  for_each_independent(g, [&](Mask s) {
    if (popcount(s) > best.value) best = {popcount(s), to_set(g.n, s)};
  });
  return best;
}

OracleAnswer max_acyclic_set(const Digraph& d) {
  MaskGraph g(d);
  OracleAnswer best{0, VertexSet(g.n)};
  // Acyclicity is hereditary, so a lex-order walk can prune at the first cycle.
  std::function<void(Mask, int)> walk = [&](Mask s, int from) {
    if (popcount(s) > best.value) best = {popcount(s), to_set(g.n, s)};
    if (popcount(s) + (g.n - from) <= best.value) return;
    for (int v = from; v < g.n; ++v)
      if (g.acyclic(s | bit(v))) walk(s | bit(v), v + 1);
  };
  walk(0, 0);
  return best;
}

}  // namespace qk
