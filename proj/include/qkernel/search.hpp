#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkernel/digraph.hpp"
#include "qkernel/small.hpp"

namespace qk {

/// "3", "-1/10"; throws PreconditionError otherwise.
Rational parse_rational(const std::string& text);
/// "3" for integers, "a/b" otherwise.
std::string format_rational(const Rational& value);

/// Predicates a scanned digraph must satisfy. Zero disables a numeric filter.
struct Filter {
  bool source_free = false;
  bool bipartite = false;
  /// No directed cycle shorter than this.
  int girth = 0;
  int min_in = 0;
  /// No s-source sets for this s.
  int no_source_sets = 0;
  bool unicyclic = false;

  bool accepts(const Digraph& d) const;
  /// Union of the constraints of both filters.
  Filter merged(const Filter& other) const;
  /// Canonical comma list, e.g. "source-free,girth=5".
  std::string to_string() const;
};

/// "source-free,bipartite,girth=5,min-in=2,no-source-sets=1,unicyclic".
/// Throws PreconditionError on unknown or malformed items.
Filter parse_filters(const std::string& text);

/// Number of labeled digraphs on n vertices, 2^{n(n-1)}.
std::uint64_t labeled_digraph_count(int n);
/// Bit i of `index` selects the i-th ordered pair (u,v), u ≠ v, in
/// lexicographic order.
Digraph digraph_from_index(int n, std::uint64_t index);
/// Every labeled digraph on n ≤ 5 vertices passing `filter`, by ascending
/// index. Refuses larger n.
void enumerate_digraphs(int n, const Filter& filter, const std::function<void(const Digraph&)>& visit);

/// Sample `index` of a seeded random stream: n uniform in [n_min, n_max],
/// arcs with probability p, then repaired and rejection-filtered. The result
/// depends only on (seed, index), never on how work is split.
Digraph random_digraph(std::uint64_t seed, std::uint64_t index, int n_min, int n_max, double arc_probability,
                       const Filter& filter);

struct SearchScope {
  int n_min = 1;
  int n_max = 4;
  /// Random mode when set; exhaustive otherwise.
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  double arc_probability = 0.5;
  Filter filter;
  int jobs = 1;
  /// Cap on stored extremal witnesses (smallest first); 0 keeps all.
  std::size_t max_witnesses = 20;
  /// Record wall time in the report; otherwise elapsed_ms is 0.
  bool timing = false;
};

struct TargetParams {
  int q = 2;
  int r = 2;
  /// Pendant count for the blow-up check; 0 means n+1.
  int k = 0;
  Rational eps{1, 10};
  int delta_max = 3;
  int q_max = 3;
};

struct Finding {
  Digraph digraph;
  nlohmann::json data;
};

struct SearchReport {
  std::string target;
  nlohmann::json params;
  int n_min = 0;
  int n_max = 0;
  Filter filters;
  std::uint64_t seed = 0;
  std::uint64_t digraphs_checked = 0;
  std::vector<Finding> counterexamples;
  std::vector<Finding> extremal_witnesses;
  long long elapsed_ms = 0;
};

/// Target ids accepted by check_conjecture.
std::vector<std::string> target_ids();

/// Filters a target imposes on every digraph it scans.
Filter target_filter(const std::string& id, const TargetParams& params);

/// Outcome of one target on one digraph.
struct Evaluation {
  enum class Status { Holds, Tight, Fails };
  Status status = Status::Holds;
  nlohmann::json data;
};
Evaluation evaluate_target(const std::string& id, const TargetParams& params, const Digraph& d);

/// Runs a target over the scope. Throws UnknownNameError for unknown ids and
/// PreconditionError for scopes beyond the oracle limits.
SearchReport check_conjecture(const std::string& id, const TargetParams& params, const SearchScope& scope);

/// Empirical max of (min q-kernel)/n per (δ, q) cell, over digraphs of
/// minimum in-degree ≥ δ in the scope plus the bidirected clique K_{δ+1} and
/// the tripartite blow-up of each δ. One extremal witness per cell.
SearchReport c_table(int delta_max, int q_max, const SearchScope& scope);

nlohmann::json report_to_json(const SearchReport& report);
/// Parses a report and re-verifies every counterexample. Throws
/// VerificationError when one does not reproduce.
SearchReport report_from_json(const nlohmann::json& doc);

}  // namespace qk
