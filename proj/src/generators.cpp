#include "qkernel/generators.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <random>

#include "qkernel/bipartite.hpp"
#include "qkernel/disjoint.hpp"
#include "qkernel/errors.hpp"
#include "qkernel/kernel.hpp"
#include "qkernel/large.hpp"
#include "qkernel/oracle.hpp"

namespace qk {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw PreconditionError(message);
}

// Certified properties are facts about the construction; failing one is a bug.
void certify(bool ok, const std::string& family, const std::string& property) {
  if (!ok) throw VerificationError(family + ": certified property failed: " + property);
}

}  // namespace

Digraph cycle(int length) {
  require(length >= 2, "cycle: length must be at least 2");
  std::vector<Arc> arcs;
  for (int i = 0; i < length; ++i) arcs.push_back({i, (i + 1) % length});
  return Digraph(length, std::move(arcs));
}

Digraph disjoint_union(const std::vector<Digraph>& parts) {
  std::vector<Arc> arcs;
  int offset = 0;
  for (const Digraph& part : parts) {
    for (const Arc& a : part.arcs()) arcs.push_back({a.tail + offset, a.head + offset});
    offset += part.order();
  }
  return Digraph(offset, std::move(arcs));
}

Digraph digon_star(int s) {
  require(s >= 1, "digon_star: s must be at least 1");
  std::vector<Arc> arcs;
  for (int leaf = 1; leaf <= s; ++leaf) {
    arcs.push_back({0, leaf});
    arcs.push_back({leaf, 0});
  }
  Digraph d(s + 1, std::move(arcs));
  if (s >= 2) certify(find_source_sets(d, 2).empty(), "digon_star", "no 2-source sets");
  return d;
}

Digraph bidirected_clique(int k) {
  require(k >= 1, "bidirected_clique: k must be at least 1");
  std::vector<Arc> arcs;
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v)
      if (u != v) arcs.push_back({u, v});
  Digraph d(k, std::move(arcs));
  certify(degree_stats(d).min_in == k - 1, "bidirected_clique", "minimum in-degree k-1");
  return d;
}

Digraph tripartite_blowup(int delta) {
  require(delta >= 1, "tripartite_blowup: delta must be at least 1");
  std::vector<Arc> arcs;
  for (int part = 0; part < 3; ++part)
    for (int i = 0; i < delta; ++i)
      for (int j = 0; j < delta; ++j) arcs.push_back({part * delta + i, ((part + 1) % 3) * delta + j});
  Digraph d(3 * delta, std::move(arcs));
  certify(degree_stats(d).min_in == delta, "tripartite_blowup", "minimum in-degree delta");
  if (delta <= 3) {
    std::vector<VertexSet> parts;
    for (int part = 0; part < 3; ++part) {
      VertexSet s(3 * delta);
      for (int i = 0; i < delta; ++i) s.insert(part * delta + i);
      parts.push_back(s);
    }
    certify(all_qkernels(d, 2) == parts, "tripartite_blowup", "the only quasikernels are the three parts");
  }
  return d;
}

Digraph bidirected_path(int k) {
  require(k >= 1, "bidirected_path: k must be at least 1");
  std::vector<Arc> arcs;
  for (int i = 0; i + 1 < k; ++i) {
    arcs.push_back({i, i + 1});
    arcs.push_back({i + 1, i});
  }
  Digraph d(k, std::move(arcs));
  auto scc = strongly_connected_components(d);
  certify(scc.components.size() == 1 && scc_diameter(d, scc.components[0]) == k - 1, "bidirected_path",
          "one strong component of diameter k-1");
  if (k >= 3 && k % 2 == 1 && k <= 15) {
    VertexSet odd(k);
    for (int i = 1; i < k; i += 2) odd.insert(i);
    certify(is_proper_pseudo_source_set(d, odd), "bidirected_path", "odd vertices form a proper pseudo-source set");
  }
  return d;
}

Digraph eulerian_tournament(int n) {
  require(n >= 3 && n % 2 == 1, "eulerian_tournament: n must be odd and at least 3");
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int step = 1; step <= (n - 1) / 2; ++step) arcs.push_back({i, (i + step) % n});
  Digraph d(n, std::move(arcs));
  for (Vertex v = 0; v < n; ++v)
    certify(d.in_degree(v) == d.out_degree(v), "eulerian_tournament", "in-degree equals out-degree");
  if (n <= 15) {
    auto kernels = all_qkernels(d, 2);
    bool singletons = static_cast<int>(kernels.size()) == n;
    for (const auto& k : kernels) singletons = singletons && k.size() == 1;
    certify(singletons, "eulerian_tournament", "the quasikernels are exactly the singletons");
    certify(max_covering_quasikernel(d).value == (n + 1) / 2, "eulerian_tournament", "max |N+[Q]| = (n+1)/2");
  }
  return d;
}

Digraph cycle_with_tails(int q, int half_length) {
  Digraph d = cycle_tails_lower_bound(q, half_length);
  certify(d.order() == q * half_length, "cycle_with_tails", "order q*l");
  return d;
}

Digraph leafed_cycle(int length) {
  require(length >= 2 && length % 2 == 0, "leafed_cycle: length must be even and at least 2");
  std::vector<Arc> arcs;
  for (int i = 0; i < length; ++i) arcs.push_back({i, (i + 1) % length});
  for (int i = 0; i < length / 2; ++i) arcs.push_back({2 * i + 1, length + i});
  Digraph d(length + length / 2, std::move(arcs));
  certify(find_bipartition(d).has_value() && degree_stats(d).source_free(), "leafed_cycle",
          "source-free and bipartite");
  return d;
}

Digraph tournament_pendants(int k, bool hub) {
  require(k >= 3 && k % 2 == 1, "tournament_pendants: k must be odd and at least 3");
  std::vector<Arc> arcs = eulerian_tournament(k).arcs();
  const int n = k * k;
  VertexSet leaves(hub ? n + 1 : n);
  for (int v = 0; v < k; ++v)
    for (int j = 0; j < k - 1; ++j) {
      Vertex leaf = k + v * (k - 1) + j;
      arcs.push_back({v, leaf});
      leaves.insert(leaf);
    }
  if (hub) {
    for (Vertex leaf : leaves) arcs.push_back({leaf, n});
    for (int v = 0; v < k; ++v) arcs.push_back({n, v});
  }
  Digraph d(hub ? n + 1 : n, std::move(arcs));
  certify(is_independent(d, leaves) && leaves.size() == n - k, "tournament_pendants",
          "the leaves form an independent set of size n - sqrt(n)");
  if (hub) {
    bool minimal = is_q_kernel(d, leaves, 2).ok();
    for (Vertex leaf : leaves) {
      VertexSet smaller = leaves;
      smaller.erase(leaf);
      minimal = minimal && !is_q_kernel(d, smaller, 2).ok();
    }
    certify(minimal, "tournament_pendants", "the leaves form a minimal quasikernel");
  }
  return d;
}

Digraph random_unicyclic(std::uint64_t seed, int n, int cycle_length) {
  require(cycle_length >= 1 && cycle_length <= n, "random_unicyclic: need 1 <= cycle length <= n");
  require(cycle_length >= 2, "random_unicyclic: cycle length must be at least 2");
  std::mt19937_64 rng(seed);
  std::vector<Arc> arcs;
  for (int i = 0; i < cycle_length; ++i) arcs.push_back({i, (i + 1) % cycle_length});
  for (int i = cycle_length; i < n; ++i) arcs.push_back({static_cast<Vertex>(rng() % static_cast<std::uint64_t>(i)), i});
  Digraph d(n, std::move(arcs));
  for (Vertex v = 0; v < n; ++v) certify(d.in_degree(v) == 1, "random_unicyclic", "every in-degree is 1");
  certify(weak_components(d).size() == 1, "random_unicyclic", "connected");
  return d;
}

FamilyParams parse_params(const std::string& text) {
  FamilyParams params;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    std::size_t eq = item.find('=');
    require(eq != std::string::npos && eq > 0, "parameter '" + item + "' is not key=value");
    params[item.substr(0, eq)] = item.substr(eq + 1);
    pos = end + 1;
  }
  return params;
}

namespace {

class ParamReader {
 public:
  ParamReader(std::string family, const FamilyParams& params) : family_(std::move(family)), params_(params) {}

  long long integer(const std::string& key) const {
    auto it = params_.find(key);
    require(it != params_.end(), family_ + ": missing parameter '" + key + "'");
    return parse(key, it->second);
  }
  long long integer(const std::string& key, long long fallback) const {
    auto it = params_.find(key);
    return it == params_.end() ? fallback : parse(key, it->second);
  }
  int small(const std::string& key) const { return checked_int(key, integer(key)); }
  int small(const std::string& key, int fallback) const { return checked_int(key, integer(key, fallback)); }

  void allow_only(std::initializer_list<std::string> keys) const {
    for (const auto& [key, value] : params_)
      require(std::find(keys.begin(), keys.end(), key) != keys.end(), family_ + ": unknown parameter '" + key + "'");
  }

 private:
  long long parse(const std::string& key, const std::string& text) const {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    require(ec == std::errc() && ptr == text.data() + text.size(),
            family_ + ": parameter '" + key + "' is not an integer: '" + text + "'");
    return value;
  }
  int checked_int(const std::string& key, long long value) const {
    require(value >= -1000000 && value <= 1000000, family_ + ": parameter '" + key + "' is out of range");
    return static_cast<int>(value);
  }

  std::string family_;
  const FamilyParams& params_;
};

FamilyParams without(FamilyParams params, std::initializer_list<std::string> keys) {
  for (const auto& key : keys) params.erase(key);
  return params;
}

}  // namespace

Digraph generate(const std::string& family, const FamilyParams& params) {
  ParamReader p(family, params);
  if (family == "cycle") {
    p.allow_only({"l"});
    return cycle(p.small("l"));
  }
  if (family == "disjoint_union") {
    auto of = params.find("of");
    require(of != params.end(), "disjoint_union: missing parameter 'of'");
    require(of->second != "disjoint_union", "disjoint_union: cannot nest");
    const int copies = p.small("copies", 2);
    require(copies >= 1, "disjoint_union: copies must be at least 1");
    Digraph base = generate(of->second, without(params, {"of", "copies"}));
    return disjoint_union(std::vector<Digraph>(copies, base));
  }
  if (family == "digon_star") {
    p.allow_only({"s"});
    return digon_star(p.small("s"));
  }
  if (family == "bidirected_clique") {
    p.allow_only({"k"});
    return bidirected_clique(p.small("k"));
  }
  if (family == "tripartite_blowup") {
    p.allow_only({"delta"});
    return tripartite_blowup(p.small("delta"));
  }
  if (family == "bidirected_path") {
    p.allow_only({"k"});
    return bidirected_path(p.small("k"));
  }
  if (family == "eulerian_tournament") {
    p.allow_only({"n"});
    return eulerian_tournament(p.small("n"));
  }
  if (family == "cycle_with_tails") {
    p.allow_only({"q", "l"});
    return cycle_with_tails(p.small("q"), p.small("l"));
  }
  if (family == "leafed_cycle") {
    p.allow_only({"l"});
    return leafed_cycle(p.small("l"));
  }
  if (family == "tournament_pendants") {
    p.allow_only({"k", "w"});
    const int w = p.small("w", 0);
    require(w == 0 || w == 1, "tournament_pendants: w must be 0 or 1");
    return tournament_pendants(p.small("k"), w == 1);
  }
  if (family == "random_unicyclic") {
    p.allow_only({"seed", "n", "c"});
    const long long seed = p.integer("seed");
    require(seed >= 0, "random_unicyclic: seed must be non-negative");
    return random_unicyclic(static_cast<std::uint64_t>(seed), p.small("n"), p.small("c"));
  }
  if (family == "pendant_blowup") {
    auto of = params.find("of");
    require(of != params.end(), "pendant_blowup: missing parameter 'of'");
    Digraph base = generate(of->second, without(params, {"of", "k"}));
    return pendant_blowup(base, p.small("k"));
  }
  throw UnknownNameError("unknown family '" + family + "'");
}

Digraph generate(const std::string& spec) {
  FamilyParams params = parse_params(spec);
  auto it = params.find("family");
  require(it != params.end(), "spec '" + spec + "' has no family=");
  std::string family = it->second;
  params.erase(it);
  return generate(family, params);
}

std::vector<FamilyInfo> family_catalog() {
  return {
      {"cycle", "l", "directed l-cycle; minimum q-kernel has size ceil(l/(q+1))", "cycle-length spectrum tightness",
       "family=cycle,l=6"},
      {"disjoint_union", "of,copies[,base params]", "copies side by side; kernels split componentwise",
       "tightness by disjoint unions", "family=disjoint_union,of=cycle,l=4,copies=2"},
      {"digon_star", "s", "no 2-source sets when s >= 2; leaves are independent but leave only the centre",
       "pseudo-source sets", "family=digon_star,s=2"},
      {"bidirected_clique", "k", "minimum in-degree k-1; every nonempty independent set is a single vertex",
       "minimum in-degree lower bound", "family=bidirected_clique,k=3"},
      {"tripartite_blowup", "delta", "minimum in-degree delta; the only quasikernels are the three parts",
       "minimum in-degree quasikernel bound 1/3", "family=tripartite_blowup,delta=2"},
      {"bidirected_path", "k", "one strong component of diameter k-1; for k = 2r+1 the odd vertices are a proper "
                               "pseudo-source set",
       "pseudo-source component diameter", "family=bidirected_path,k=5"},
      {"eulerian_tournament", "n", "regular tournament; quasikernels are singletons with |N+[Q]| = (n+1)/2",
       "large quasikernel tightness", "family=eulerian_tournament,n=5"},
      {"cycle_with_tails", "q,l", "order q*l; every q-kernel inside U has at least l vertices",
       "q-kernels inside one part: lower bound", "family=cycle_with_tails,q=3,l=3"},
      {"leafed_cycle", "l", "smallest 5-kernel inside U of the leafed 6-cycle has 2/9 of the vertices",
       "q-kernels inside one part: leafed cycle", "family=leafed_cycle,l=6"},
      {"tournament_pendants", "k[,w]", "independent set of size n - sqrt(n); every independent X has |N+(X)| <= "
                                       "2 sqrt(n); with w=1 the leaves form a minimal quasikernel",
       "out-degree generalization counterexample", "family=tournament_pendants,k=3"},
      {"random_unicyclic", "seed,n,c", "every in-degree is 1 and the underlying graph is connected",
       "unicyclic test corpus", "family=random_unicyclic,seed=1,n=8,c=4"},
      {"pendant_blowup", "of,k[,base params]", "n(k+1) vertices; k out-leaves on every vertex",
       "small-to-large quasikernel reduction", "family=pendant_blowup,of=cycle,l=3,k=2"},
  };
}

}  // namespace qk
