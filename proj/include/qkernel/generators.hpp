#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qkernel/digraph.hpp"

namespace qk {

/// Directed ℓ-cycle 0 → 1 → … → ℓ-1 → 0; ℓ ≥ 2.
Digraph cycle(int length);
/// Copies placed side by side, relabeled in order.
Digraph disjoint_union(const std::vector<Digraph>& parts);
/// Centre 0 joined by a digon to each of the leaves 1..s.
Digraph digon_star(int s);
/// Every ordered pair of distinct vertices is an arc.
Digraph bidirected_clique(int k);
/// Parts {0..δ-1}, {δ..2δ-1}, {2δ..3δ-1}, all arcs from each part to the next (cyclically).
Digraph tripartite_blowup(int delta);
/// Path 0 - 1 - … - k-1 with every edge a digon.
Digraph bidirected_path(int k);
/// Rotational tournament on odd n ≥ 3: i → i+1, …, i+(n-1)/2 (mod n).
Digraph eulerian_tournament(int n);
/// Same as cycle_tails_lower_bound(q, ℓ).
Digraph cycle_with_tails(int q, int half_length);
/// Directed cycle of even length with a leaf hanging off every odd vertex;
/// leaf of vertex 2i+1 is length + i.
Digraph leafed_cycle(int length);
/// Rotational tournament on k vertices (odd k ≥ 3), each given k-1 pendant
/// out-leaves (leaf j of v is k + v(k-1) + j). With `hub`, one more vertex
/// k² receives an arc from every leaf and sends one to every tournament vertex.
Digraph tournament_pendants(int k, bool hub = false);
/// Uniform random recursive tree on n vertices grafted onto the cycle
/// 0 → … → c-1 → 0: vertex i ≥ c gets a parent drawn from 0..i-1.
Digraph random_unicyclic(std::uint64_t seed, int n, int cycle_length);

using FamilyParams = std::map<std::string, std::string>;

/// "a=1,b=2" → {a:1, b:2}. Throws PreconditionError on malformed pairs.
FamilyParams parse_params(const std::string& text);

/// Builds a family member by name. Throws UnknownNameError for unknown
/// families and PreconditionError for bad or missing parameters.
Digraph generate(const std::string& family, const FamilyParams& params);
/// "family=cycle,l=6".
Digraph generate(const std::string& spec);

struct FamilyInfo {
  std::string name;
  /// Parameter list, e.g. "q,l" or "k[,w]".
  std::string params;
  std::string property;
  /// Short description of the construction's role.
  std::string anchor;
  /// A spec string every generator must accept.
  std::string example;
};

std::vector<FamilyInfo> family_catalog();

}  // namespace qk
