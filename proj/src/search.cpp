#include "qkernel/search.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <exception>
#include <map>
#include <random>
#include <thread>

#include "qkernel/digraph_io.hpp"
#include "qkernel/disjoint.hpp"
#include "qkernel/errors.hpp"
#include "qkernel/generators.hpp"
#include "qkernel/kernel.hpp"
#include "qkernel/large.hpp"
#include "qkernel/oracle.hpp"

namespace qk {

using nlohmann::json;

namespace {

constexpr int kExhaustiveMaxOrder = 5;
constexpr int kRandomMaxOrder = 14;
constexpr int kRandomAttempts = 10000;

long long parse_integer(const std::string& text, const std::string& what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw PreconditionError(what + " is not an integer: '" + text + "'");
  return value;
}

json set_json(const VertexSet& s) { return s.members(); }

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text, "rational"));
  long long num = parse_integer(text.substr(0, slash), "numerator");
  long long den = parse_integer(text.substr(slash + 1), "denominator");
  if (den == 0) throw PreconditionError("rational '" + text + "' has a zero denominator");
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

// ---------------------------------------------------------------------------
// Filters

bool Filter::accepts(const Digraph& d) const {
  if (source_free || min_in > 0) {
    auto stats = degree_stats(d);
    if (source_free && !stats.source_free()) return false;
    if (stats.min_in < min_in) return false;
  }
  if (unicyclic) {
    if (d.order() == 0) return false;
    for (Vertex v = 0; v < d.order(); ++v)
      if (d.in_degree(v) != 1) return false;
    if (weak_components(d).size() != 1) return false;
  }
  if (bipartite && !find_bipartition(d)) return false;
  if (girth > 1 && !directed_cycle_lengths(d, std::min(girth - 1, d.order())).empty()) return false;
  if (no_source_sets > 0 && !find_source_sets(d, no_source_sets).empty()) return false;
  return true;
}

Filter Filter::merged(const Filter& other) const {
  Filter f = *this;
  f.source_free = source_free || other.source_free;
  f.bipartite = bipartite || other.bipartite;
  f.girth = std::max(girth, other.girth);
  f.min_in = std::max(min_in, other.min_in);
  f.no_source_sets = std::max(no_source_sets, other.no_source_sets);
  f.unicyclic = unicyclic || other.unicyclic;
  return f;
}

std::string Filter::to_string() const {
  std::vector<std::string> items;
  if (source_free) items.push_back("source-free");
  if (bipartite) items.push_back("bipartite");
  if (girth > 0) items.push_back("girth=" + std::to_string(girth));
  if (min_in > 0) items.push_back("min-in=" + std::to_string(min_in));
  if (no_source_sets > 0) items.push_back("no-source-sets=" + std::to_string(no_source_sets));
  if (unicyclic) items.push_back("unicyclic");
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ",") + item;
  return out;
}

Filter parse_filters(const std::string& text) {
  Filter f;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    std::string key = item.substr(0, eq);
    auto number = [&] {
      if (eq == std::string::npos) throw PreconditionError("filter '" + key + "' needs a value");
      long long v = parse_integer(item.substr(eq + 1), "filter '" + key + "'");
      if (v < 0 || v > 64) throw PreconditionError("filter '" + key + "' is out of range");
      return static_cast<int>(v);
    };
    auto flag = [&] {
      if (eq != std::string::npos) throw PreconditionError("filter '" + key + "' takes no value");
      return true;
    };
    if (key == "source-free") f.source_free = flag();
    else if (key == "bipartite") f.bipartite = flag();
    else if (key == "unicyclic") f.unicyclic = flag();
    else if (key == "girth") f.girth = number();
    else if (key == "min-in") f.min_in = number();
    else if (key == "no-source-sets") f.no_source_sets = number();
    else throw PreconditionError("unknown filter '" + key + "'");
  }
  return f;
}

// ---------------------------------------------------------------------------
// Enumeration

std::uint64_t labeled_digraph_count(int n) {
  if (n < 0 || n > kExhaustiveMaxOrder + 2) throw PreconditionError("labeled_digraph_count: n out of range");
  return std::uint64_t{1} << (n * (n - 1));
}

Digraph digraph_from_index(int n, std::uint64_t index) {
  std::vector<Arc> arcs;
  int bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      if ((index >> bit) & 1U) arcs.push_back({u, v});
      ++bit;
    }
  return Digraph(n, std::move(arcs));
}

void enumerate_digraphs(int n, const Filter& filter, const std::function<void(const Digraph&)>& visit) {
  if (n > kExhaustiveMaxOrder)
    throw PreconditionError("exhaustive enumeration is limited to n <= " + std::to_string(kExhaustiveMaxOrder));
  const std::uint64_t total = labeled_digraph_count(n);
  for (std::uint64_t i = 0; i < total; ++i) {
    Digraph d = digraph_from_index(n, i);
    if (filter.accepts(d)) visit(d);
  }
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::optional<Digraph> random_attempt(std::mt19937_64& rng, int n, double p, const Filter& filter) {
  if (filter.unicyclic) {
    if (n < 2) return std::nullopt;
    const int cycle_len = filter.bipartite ? 2 + 2 * static_cast<int>(rng() % static_cast<std::uint64_t>(n / 2))
                                           : 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    return random_unicyclic(rng(), n, cycle_len);
  }
  auto allowed = [&](Vertex u, Vertex v) { return u != v && (!filter.bipartite || (u % 2) != (v % 2)); };
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (allowed(u, v) && unit(rng) < p) adj[u][v] = true;
  // Top up in-degrees so degree filters are rarely the reason for rejection.
  const int need = std::max(filter.source_free || filter.no_source_sets > 0 ? 1 : 0, filter.min_in);
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> spare;
    int have = 0;
    for (Vertex u = 0; u < n; ++u) {
      if (adj[u][v]) ++have;
      else if (allowed(u, v)) spare.push_back(u);
    }
    while (have < need && !spare.empty()) {
      std::size_t pick = rng() % spare.size();
      adj[spare[pick]][v] = true;
      spare.erase(spare.begin() + static_cast<std::ptrdiff_t>(pick));
      ++have;
    }
  }
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (adj[u][v]) arcs.push_back({u, v});
  return Digraph(n, std::move(arcs));
}

}  // namespace

Digraph random_digraph(std::uint64_t seed, std::uint64_t index, int n_min, int n_max, double arc_probability,
                       const Filter& filter) {
  if (n_min < 1 || n_min > n_max) throw PreconditionError("random_digraph: need 1 <= n_min <= n_max");
  if (n_max > kRandomMaxOrder)
    throw PreconditionError("random sampling is limited to n <= " + std::to_string(kRandomMaxOrder));
  if (!(arc_probability >= 0.0 && arc_probability <= 1.0))
    throw PreconditionError("arc probability must lie in [0,1]");
  for (int attempt = 0; attempt < kRandomAttempts; ++attempt) {
    std::mt19937_64 rng(splitmix(splitmix(seed) ^ splitmix(index)) + static_cast<std::uint64_t>(attempt));
    const int n = n_min + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max - n_min + 1));
    auto d = random_attempt(rng, n, arc_probability, filter);
    if (d && filter.accepts(*d)) return *d;
  }
  throw PreconditionError("random_digraph: filters rejected " + std::to_string(kRandomAttempts) + " attempts");
}

// ---------------------------------------------------------------------------
// Targets

namespace {

using Status = Evaluation::Status;

Status compare(const Rational& value, const Rational& bound, bool upper) {
  // upper: value must not exceed bound; otherwise value must reach it.
  if (value == bound) return Status::Tight;
  return (upper ? value < bound : value > bound) ? Status::Holds : Status::Fails;
}

Evaluation small_quasikernel_target(const Digraph& d) {
  auto best = min_qkernel(d, 2);
  Rational bound(d.order(), 2);
  return {compare(best->value, bound, true),
          {{"min_quasikernel", best->value}, {"witness", set_json(best->witness)}, {"bound", format_rational(bound)}}};
}

Evaluation large_quasikernel_target(const Digraph& d) {
  auto best = max_covering_quasikernel(d);
  Rational bound(d.order(), 2);
  return {compare(best.value, bound, false),
          {{"max_cover", best.value}, {"witness", set_json(best.witness)}, {"bound", format_rational(bound)}}};
}

Evaluation even_larger_target(const Digraph& d) {
  auto best = max_excess_quasikernel(d);
  return {compare(best.value, d.order(), false),
          {{"max_excess", best.value}, {"witness", set_json(best.witness)}, {"bound", d.order()}}};
}

Evaluation cycle_spectrum_target(const Digraph& d, int q) {
  auto lengths = directed_cycle_lengths(d);
  Rational bound(0);
  for (int len : lengths) bound = std::max(bound, Rational((len + q) / (q + 1), len) * d.order());
  auto best = min_qkernel(d, q);
  json lens = std::vector<int>(lengths.begin(), lengths.end());
  return {compare(best->value, bound, true),
          {{"min_qkernel", best->value}, {"witness", set_json(best->witness)}, {"cycle_lengths", lens},
           {"bound", format_rational(bound)}}};
}

Evaluation quasi_girth_target(const Digraph& d, const Rational& eps) {
  auto best = min_qkernel(d, 2);
  Rational bound = (Rational(1, 2) - eps) * d.order();
  return {compare(best->value, bound, true),
          {{"min_quasikernel", best->value}, {"witness", set_json(best->witness)}, {"bound", format_rational(bound)}}};
}

Evaluation unicyclic_average_target(const Digraph& d, int q) {
  auto sides = find_bipartition(d);
  auto lengths = directed_cycle_lengths(d);
  if (!sides || lengths.size() != 1) throw PreconditionError("unicyclic-average needs a unicyclic bipartite digraph");
  const int half = *lengths.begin() / 2;
  auto in_u = min_qkernel(d, q, sides->u);
  auto in_v = min_qkernel(d, q, sides->v);
  if (!in_u || !in_v) throw VerificationError("unicyclic-average: a side has no q-kernel");
  Rational bound = Rational(2 * ((half + q) / (q + 1)), half) * d.order();
  return {compare(in_u->value + in_v->value, bound, true),
          {{"min_in_u", in_u->value},
           {"min_in_v", in_v->value},
           {"witness_u", set_json(in_u->witness)},
           {"witness_v", set_json(in_v->witness)},
           {"bound", format_rational(bound)}}};
}

Evaluation acyclic_dichotomy_target(const Digraph& d) {
  auto acyclic = max_acyclic_set(d);
  VertexSet members = qkernel_members(d, 2);
  int degree = -1;
  Vertex best_y = -1;
  for (Vertex y : members)
    if (d.out_degree(y) > degree) {
      degree = d.out_degree(y);
      best_y = y;
    }
  const long long n = d.order();
  const long long a = acyclic.value;
  const long long reach = degree + 1;
  const long long best = std::max(a * a, reach * reach);
  Status status = best > n ? Status::Holds : best == n ? Status::Tight : Status::Fails;
  return {status,
          {{"max_acyclic", a}, {"acyclic_witness", set_json(acyclic.witness)}, {"best_member", best_y},
           {"best_member_out_degree", degree}}};
}

Evaluation sqrt_bound_target(const Digraph& d) {
  const int bound = d.order() - isqrt(d.order());
  try {
    VertexSet q_set = small_quasikernel(d);
    Status status = q_set.size() == bound ? Status::Tight : Status::Holds;
    return {status, {{"size", q_set.size()}, {"set", set_json(q_set)}, {"bound", bound}}};
  } catch (const VerificationError& e) {
    return {Status::Fails, {{"error", e.what()}, {"bound", bound}}};
  }
}

Evaluation large_constructions_target(const Digraph& d) {
  try {
    auto three = three_kernel_large(d);
    VertexSet large = large_quasikernel(d);
    const long long n = d.order();
    const long long cover3 = closed_out_neighborhood(d, three.members).size();
    const long long cover = closed_out_neighborhood(d, large).size();
    bool tight = 3 * cover3 == n || cover * cover * cover == n;
    return {tight ? Status::Tight : Status::Holds,
            {{"three_kernel", set_json(three.members)}, {"three_kernel_radius", three.radius},
             {"three_kernel_cover", cover3}, {"large_quasikernel", set_json(large)}, {"large_cover", cover}}};
  } catch (const VerificationError& e) {
    return {Status::Fails, {{"error", e.what()}}};
  }
}

Evaluation disjoint_kernels_target(const Digraph& d, int r) {
  try {
    auto kernels = disjoint_qkernels(d, r);
    json sets = json::array();
    bool tight = false;
    for (const auto& k : kernels) {
      long long reach = distances_from(d, k.members).eccentricity();
      tight = tight || reach == k.radius;
      sets.push_back({{"set", set_json(k.members)}, {"radius", k.radius}, {"reach", reach}});
    }
    return {tight ? Status::Tight : Status::Holds, {{"kernels", sets}}};
  } catch (const VerificationError& e) {
    return {Status::Fails, {{"error", e.what()}}};
  }
}

Evaluation pendant_blowup_target(const Digraph& d, int k_param) {
  const long long n = d.order();
  const int k = k_param > 0 ? k_param : d.order() + 1;
  Digraph blown = pendant_blowup(d, k);
  auto best = min_qkernel(blown, 2);
  VertexSet core(d.order());
  for (Vertex v : best->witness)
    if (v < d.order()) core.insert(v);
  const long long cover = closed_out_neighborhood(d, core).size();
  const long long size = best->value;
  std::vector<std::string> broken;
  if (!is_q_kernel(d, core, 2).ok()) broken.push_back("restriction is not a quasikernel");
  if (size < k * (n - cover)) broken.push_back("|Q'| < k(n - |N+[Q]|)");
  if (2 * size > (k + 1) * n) broken.push_back("2|Q'| > (k+1)n");
  if (2 * k * cover < (k - 1) * n) broken.push_back("|N+[Q]| < n/2 - n/(2k)");
  Status status = !broken.empty() ? Status::Fails : 2 * size == (k + 1) * n ? Status::Tight : Status::Holds;
  return {status,
          {{"k", k}, {"min_quasikernel_blowup", size}, {"restricted", set_json(core)}, {"cover", cover},
           {"broken", broken}}};
}

const std::vector<std::string>& ids() {
  static const std::vector<std::string> list{
      "small-quasikernel", "large-quasikernel", "even-larger",         "cycle-spectrum",
      "quasi-girth",       "unicyclic-average", "acyclic-dichotomy",   "sqrt-bound",
      "large-constructions", "disjoint-kernels", "pendant-blowup"};
  return list;
}

void validate_params(const std::string& id, const TargetParams& p) {
  if (std::find(ids().begin(), ids().end(), id) == ids().end()) throw UnknownNameError("unknown target '" + id + "'");
  if (id == "cycle-spectrum" && p.q < 1) throw PreconditionError("cycle-spectrum: q must be at least 1");
  if (id == "unicyclic-average" && (p.q < 3 || p.q % 2 == 0))
    throw PreconditionError("unicyclic-average: q must be odd and at least 3");
  if (id == "quasi-girth" && (p.eps < 0 || p.eps > Rational(1, 2)))
    throw PreconditionError("quasi-girth: eps must lie in [0, 1/2]");
  if (id == "disjoint-kernels" && (p.r < 2 || p.r > 6)) throw PreconditionError("disjoint-kernels: r must lie in 2..6");
  if (id == "pendant-blowup" && p.k < 0) throw PreconditionError("pendant-blowup: k must be non-negative");
}

json params_json(const std::string& id, const TargetParams& p) {
  json out = json::object();
  if (id == "cycle-spectrum" || id == "unicyclic-average") out["q"] = p.q;
  if (id == "quasi-girth") out["eps"] = format_rational(p.eps);
  if (id == "disjoint-kernels") out["r"] = p.r;
  if (id == "pendant-blowup") out["k"] = p.k;
  if (id == "c-table") {
    out["delta_max"] = p.delta_max;
    out["q_max"] = p.q_max;
  }
  return out;
}

TargetParams params_from_json(const json& j) {
  TargetParams p;
  if (j.contains("q")) p.q = j.at("q").get<int>();
  if (j.contains("r")) p.r = j.at("r").get<int>();
  if (j.contains("k")) p.k = j.at("k").get<int>();
  if (j.contains("eps")) p.eps = parse_rational(j.at("eps").get<std::string>());
  if (j.contains("delta_max")) p.delta_max = j.at("delta_max").get<int>();
  if (j.contains("q_max")) p.q_max = j.at("q_max").get<int>();
  return p;
}

}  // namespace

std::vector<std::string> target_ids() { return ids(); }

Filter target_filter(const std::string& id, const TargetParams& params) {
  Filter f;
  if (id == "small-quasikernel" || id == "cycle-spectrum" || id == "sqrt-bound" || id == "pendant-blowup")
    f.source_free = true;
  if (id == "quasi-girth") {
    f.source_free = true;
    f.bipartite = true;
    f.girth = 5;
  }
  if (id == "unicyclic-average") {
    f.unicyclic = true;
    f.bipartite = true;
  }
  if (id == "disjoint-kernels") f.no_source_sets = params.r - 1;
  return f;
}

Evaluation evaluate_target(const std::string& id, const TargetParams& params, const Digraph& d) {
  validate_params(id, params);
  if (id == "small-quasikernel") return small_quasikernel_target(d);
  if (id == "large-quasikernel") return large_quasikernel_target(d);
  if (id == "even-larger") return even_larger_target(d);
  if (id == "cycle-spectrum") return cycle_spectrum_target(d, params.q);
  if (id == "quasi-girth") return quasi_girth_target(d, params.eps);
  if (id == "unicyclic-average") return unicyclic_average_target(d, params.q);
  if (id == "acyclic-dichotomy") return acyclic_dichotomy_target(d);
  if (id == "sqrt-bound") return sqrt_bound_target(d);
  if (id == "large-constructions") return large_constructions_target(d);
  if (id == "disjoint-kernels") return disjoint_kernels_target(d, params.r);
  return pendant_blowup_target(d, params.k);
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

bool canonical_less(const Finding& a, const Finding& b) {
  if (a.digraph.order() != b.digraph.order()) return a.digraph.order() < b.digraph.order();
  if (a.digraph.arcs() != b.digraph.arcs()) return a.digraph.arcs() < b.digraph.arcs();
  return a.data.dump() < b.data.dump();
}

// Keeps the `cap` canonically smallest findings (all when cap is 0).
class FindingList {
 public:
  explicit FindingList(std::size_t cap) : cap_(cap) {}

  void add(Finding f) {
    items_.push_back(std::move(f));
    if (cap_ > 0 && items_.size() >= 2 * cap_ + 16) trim();
  }
  void absorb(FindingList&& other) {
    for (auto& f : other.items_) add(std::move(f));
  }
  std::vector<Finding> finish() {
    trim();
    return std::move(items_);
  }

 private:
  void trim() {
    std::sort(items_.begin(), items_.end(), canonical_less);
    if (cap_ > 0 && items_.size() > cap_) items_.resize(cap_);
  }

  std::size_t cap_;
  std::vector<Finding> items_;
};

// Flat index space over the scope: exhaustive digraphs of every n in range,
// or the sample indices in random mode.
class ScopeStream {
 public:
  explicit ScopeStream(const SearchScope& scope) : scope_(scope) {
    if (scope.n_min < 1 || scope.n_min > scope.n_max) throw PreconditionError("need 1 <= n_min <= n_max");
    if (scope.samples) {
      random_digraph(scope.seed, 0, scope.n_min, scope.n_max, scope.arc_probability, Filter{});  // validates scope
      total_ = *scope.samples;
    } else {
      if (scope.n_max > kExhaustiveMaxOrder)
        throw PreconditionError("exhaustive enumeration is limited to n <= " + std::to_string(kExhaustiveMaxOrder) +
                                "; pass --samples for random mode");
      for (int n = scope.n_min; n <= scope.n_max; ++n) {
        starts_.push_back(total_);
        total_ += labeled_digraph_count(n);
      }
    }
  }

  std::uint64_t size() const { return total_; }

  // The digraph at `index`, or none when the filter rejects it.
  std::optional<Digraph> at(std::uint64_t index, const Filter& filter) const {
    if (scope_.samples)
      return random_digraph(scope_.seed, index, scope_.n_min, scope_.n_max, scope_.arc_probability, filter);
    int slot = static_cast<int>(std::upper_bound(starts_.begin(), starts_.end(), index) - starts_.begin()) - 1;
    Digraph d = digraph_from_index(scope_.n_min + slot, index - starts_[slot]);
    if (!filter.accepts(d)) return std::nullopt;
    return d;
  }

 private:
  const SearchScope& scope_;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> starts_;
};

// Runs `work(lo, hi, slot)` over contiguous chunks on `jobs` threads.
void parallel_chunks(std::uint64_t total, int jobs, const std::function<void(std::uint64_t, std::uint64_t, int)>& work) {
  jobs = std::max(1, jobs);
  if (static_cast<std::uint64_t>(jobs) > total) jobs = static_cast<int>(std::max<std::uint64_t>(total, 1));
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(jobs);
  for (int slot = 0; slot < jobs; ++slot) {
    std::uint64_t lo = total * slot / jobs, hi = total * (slot + 1) / jobs;
    threads.emplace_back([&, lo, hi, slot] {
      try {
        work(lo, hi, slot);
      } catch (...) {
        errors[slot] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

json scope_params(const SearchScope& scope) {
  json out = json::object();
  out["mode"] = scope.samples ? "random" : "exhaustive";
  if (scope.samples) {
    out["samples"] = *scope.samples;
    out["arc_probability"] = scope.arc_probability;
  }
  out["max_witnesses"] = scope.max_witnesses;
  return out;
}

}  // namespace

SearchReport check_conjecture(const std::string& id, const TargetParams& params, const SearchScope& scope) {
  validate_params(id, params);
  auto started = std::chrono::steady_clock::now();
  const Filter filter = scope.filter.merged(target_filter(id, params));
  ScopeStream stream(scope);

  struct Partial {
    std::uint64_t checked = 0;
    FindingList counter, tight;
  };
  const int jobs = std::max(1, scope.jobs);
  std::vector<Partial> partials;
  for (int i = 0; i < jobs; ++i) partials.push_back({0, FindingList(scope.max_witnesses), FindingList(scope.max_witnesses)});

  parallel_chunks(stream.size(), jobs, [&](std::uint64_t lo, std::uint64_t hi, int slot) {
    Partial& part = partials[slot];
    for (std::uint64_t i = lo; i < hi; ++i) {
      auto d = stream.at(i, filter);
      if (!d) continue;
      ++part.checked;
      Evaluation e = evaluate_target(id, params, *d);
      if (e.status == Status::Fails) part.counter.add({*d, e.data});
      else if (e.status == Status::Tight) part.tight.add({*d, e.data});
    }
  });

  SearchReport report;
  report.target = id;
  report.params = params_json(id, params);
  report.params.update(scope_params(scope));
  report.n_min = scope.n_min;
  report.n_max = scope.n_max;
  report.filters = filter;
  report.seed = scope.seed;
  FindingList counter(scope.max_witnesses), tight(scope.max_witnesses);
  for (auto& part : partials) {
    report.digraphs_checked += part.checked;
    counter.absorb(std::move(part.counter));
    tight.absorb(std::move(part.tight));
  }
  report.counterexamples = counter.finish();
  report.extremal_witnesses = tight.finish();
  if (scope.timing)
    report.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
  return report;
}

namespace {

struct Cell {
  Rational ratio{-1};
  std::optional<Digraph> witness;
  int min_size = 0;
};

bool improves(const Cell& cell, const Rational& ratio, const Digraph& d) {
  if (ratio != cell.ratio) return ratio > cell.ratio;
  return cell.witness && canonical_less({d, {}}, {*cell.witness, {}});
}

}  // namespace

SearchReport c_table(int delta_max, int q_max, const SearchScope& scope) {
  if (delta_max < 1 || delta_max > 4) throw PreconditionError("c_table: delta_max must lie in 1..4");
  if (q_max < 2 || q_max > 16) throw PreconditionError("c_table: q_max must lie in 2..16");
  auto started = std::chrono::steady_clock::now();
  ScopeStream stream(scope);
  using Table = std::vector<std::vector<Cell>>;  // [delta-1][q-2]
  auto fresh = [&] { return Table(delta_max, std::vector<Cell>(q_max - 1)); };

  auto scan = [&](Table& table, const Digraph& d) {
    const int min_in = std::min(degree_stats(d).min_in, delta_max);
    if (min_in < 1) return;
    for (int q = 2; q <= q_max; ++q) {
      auto best = min_qkernel(d, q);
      Rational ratio(best->value, d.order());
      for (int delta = 1; delta <= min_in; ++delta) {
        Cell& cell = table[delta - 1][q - 2];
        if (improves(cell, ratio, d)) cell = {ratio, d, best->value};
      }
    }
  };

  const int jobs = std::max(1, scope.jobs);
  std::vector<Table> tables(jobs, fresh());
  std::vector<std::uint64_t> checked(jobs, 0);
  parallel_chunks(stream.size(), jobs, [&](std::uint64_t lo, std::uint64_t hi, int slot) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      auto d = stream.at(i, scope.filter);
      if (!d) continue;
      ++checked[slot];
      scan(tables[slot], *d);
    }
  });

  Table table = fresh();
  SearchReport report;
  for (int slot = 0; slot < jobs; ++slot) {
    report.digraphs_checked += checked[slot];
    for (int i = 0; i < delta_max; ++i)
      for (int j = 0; j < q_max - 1; ++j) {
        const Cell& c = tables[slot][i][j];
        if (c.witness && improves(table[i][j], c.ratio, *c.witness)) table[i][j] = c;
      }
  }
  for (int delta = 1; delta <= delta_max; ++delta) {
    for (const Digraph& extra : {bidirected_clique(delta + 1), tripartite_blowup(delta)}) {
      if (!scope.filter.accepts(extra)) continue;
      ++report.digraphs_checked;
      scan(table, extra);
    }
  }

  TargetParams p;
  p.delta_max = delta_max;
  p.q_max = q_max;
  report.target = "c-table";
  report.params = params_json("c-table", p);
  report.params.update(scope_params(scope));
  report.n_min = scope.n_min;
  report.n_max = scope.n_max;
  report.filters = scope.filter;
  report.seed = scope.seed;
  for (int delta = 1; delta <= delta_max; ++delta)
    for (int q = 2; q <= q_max; ++q) {
      const Cell& cell = table[delta - 1][q - 2];
      Rational floor(1, delta + 1);
      if (q == 2 && delta >= 2) floor = std::max(floor, Rational(1, 3));
      json data{{"delta", delta}, {"q", q}, {"lower_bound", format_rational(floor)}};
      if (!cell.witness) {
        data["ratio"] = nullptr;
        report.counterexamples.push_back({Digraph(), data});
        continue;
      }
      data["ratio"] = format_rational(cell.ratio);
      data["min_qkernel"] = cell.min_size;
      Finding f{*cell.witness, data};
      if (cell.ratio < floor) report.counterexamples.push_back(f);
      report.extremal_witnesses.push_back(std::move(f));
    }
  if (scope.timing)
    report.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
  return report;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json findings_json(const std::vector<Finding>& list) {
  json out = json::array();
  for (const auto& f : list) out.push_back({{"digraph", to_text(f.digraph)}, {"data", f.data}});
  return out;
}

std::vector<Finding> findings_from(const json& list) {
  std::vector<Finding> out;
  for (const auto& item : list)
    out.push_back({parse_digraph(item.at("digraph").get<std::string>()), item.at("data")});
  return out;
}

}  // namespace

json report_to_json(const SearchReport& report) {
  json out = json::object();
  out["target"] = report.target;
  out["params"] = report.params;
  out["n_range"] = {report.n_min, report.n_max};
  out["filters"] = report.filters.to_string();
  out["seed"] = report.seed;
  out["digraphs_checked"] = report.digraphs_checked;
  out["counterexamples"] = findings_json(report.counterexamples);
  out["extremal_witnesses"] = findings_json(report.extremal_witnesses);
  out["elapsed_ms"] = report.elapsed_ms;
  return out;
}

SearchReport report_from_json(const json& doc) {
  SearchReport report;
  try {
    report.target = doc.at("target").get<std::string>();
    report.params = doc.at("params");
    report.n_min = doc.at("n_range").at(0).get<int>();
    report.n_max = doc.at("n_range").at(1).get<int>();
    report.filters = parse_filters(doc.at("filters").get<std::string>());
    report.seed = doc.at("seed").get<std::uint64_t>();
    report.digraphs_checked = doc.at("digraphs_checked").get<std::uint64_t>();
    report.counterexamples = findings_from(doc.at("counterexamples"));
    report.extremal_witnesses = findings_from(doc.at("extremal_witnesses"));
    report.elapsed_ms = doc.at("elapsed_ms").get<long long>();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed report: ") + e.what());
  }

  TargetParams params = params_from_json(report.params);
  for (const auto& f : report.counterexamples) {
    if (report.target == "c-table") {
      // A cell below its floor: the stored witness must really have that ratio.
      if (f.data.at("ratio").is_null()) continue;
      const int q = f.data.at("q").get<int>();
      auto best = min_qkernel(f.digraph, q);
      if (format_rational(Rational(best->value, f.digraph.order())) != f.data.at("ratio").get<std::string>())
        throw VerificationError("report counterexample does not reproduce: c-table ratio differs");
      continue;
    }
    Evaluation e = evaluate_target(report.target, params, f.digraph);
    if (e.status != Status::Fails)
      throw VerificationError("report counterexample does not reproduce:\n" + to_text(f.digraph));
  }
  return report;
}

}  // namespace qk
