#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>

#include "qkernel/digraph_io.hpp"
#include "qkernel/disjoint.hpp"
#include "qkernel/errors.hpp"
#include "qkernel/bipartite.hpp"
#include "qkernel/generators.hpp"
#include "qkernel/kernel.hpp"
#include "qkernel/large.hpp"
#include "qkernel/oracle.hpp"
#include "qkernel/search.hpp"
#include "qkernel/small.hpp"

namespace qk::cli {

using nlohmann::json;

namespace {

/// "0,2,5" → set over n vertices.
VertexSet parse_set(const std::string& text, int n) {
  VertexSet s(n);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = std::min(text.find(',', pos), text.size());
    std::string item = text.substr(pos, end - pos);
    pos = end + 1;
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (item.empty()) {
      if (end == text.size()) break;
      continue;
    }
    int v = -1;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw PreconditionError("set member '" + item + "' is not an integer");
    if (v < 0 || v >= n)
      throw PreconditionError("set member " + std::to_string(v) + " is outside 0.." + std::to_string(n - 1));
    s.insert(v);
  }
  return s;
}

/// The certificate document shared by find and verify, so a find result
/// re-verifies to the same bytes.
json certificate_json(const Digraph& d, const VertexSet& set, int q) {
  json out{{"q", q}, {"set", set.members()}, {"size", set.size()}};
  KernelCheck check = is_q_kernel(d, set, q);
  if (!check) {
    out["valid"] = false;
    out["violation"] = check.violation().describe();
    return out;
  }
  const auto& cert = check.certificate();
  json dist = json::array();
  for (Vertex v = 0; v < d.order(); ++v) dist.push_back(cert.witness.at(v));
  out["valid"] = true;
  out["distances"] = dist;
  out["eccentricity"] = d.order() == 0 ? 0 : cert.witness.eccentricity();
  return out;
}

json bound_entry(const std::string& claim, const json& bound, const json& achieved, bool holds) {
  return {{"claim", claim}, {"bound", bound}, {"achieved", achieved}, {"holds", holds}};
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

struct FindOptions {
  std::string input;
  std::string mode;
  int q = 3;
  int r = 2;
  int girth = 3;
};

json run_find(const FindOptions& opt) {
  const Digraph d = read_digraph_file(opt.input);
  const long long n = d.order();
  json sets = json::array();
  json bounds = json::array();
  auto add_set = [&](const VertexSet& s, int radius) {
    json c = certificate_json(d, s, radius);
    if (!c.at("valid").get<bool>())
      throw VerificationError("find: constructed set fails verification: " + c.at("violation").get<std::string>());
    sets.push_back({{"set", s.members()}, {"radius", radius}, {"size", s.size()}, {"certificate", c}});
  };
  auto cover_of = [&](const VertexSet& s) { return static_cast<long long>(closed_out_neighborhood(d, s).size()); };

  if (opt.mode == "quasikernel") {
    VertexSet s = quasikernel(d);
    add_set(s, 2);
  } else if (opt.mode == "small") {
    VertexSet s = small_quasikernel(d);
    add_set(s, 2);
    const long long bound = n - isqrt(n);
    bounds.push_back(bound_entry("|Q| <= n - floor(sqrt(n))", bound, s.size(), s.size() <= bound));
  } else if (opt.mode == "large-quasikernel") {
    VertexSet s = large_quasikernel(d);
    add_set(s, 2);
    const long long cover = cover_of(s);
    bounds.push_back(bound_entry("|N+[Q]|^3 >= n", n, cover * cover * cover, cover * cover * cover >= n));
  } else if (opt.mode == "3kernel-large") {
    RadiusSet s = three_kernel_large(d);
    add_set(s.members, s.radius);
    const long long cover = cover_of(s.members);
    bounds.push_back(bound_entry("3|N+[Q]| >= n", n, 3 * cover, 3 * cover >= n));
  } else if (opt.mode == "disjoint") {
    auto kernels = disjoint_qkernels(d, opt.r);
    VertexSet used(d.order());
    bool disjoint = true;
    for (const auto& k : kernels) {
      disjoint = disjoint && !k.members.intersects(used);
      used |= k.members;
      add_set(k.members, static_cast<int>(std::min<long long>(k.radius, n + 1)));
      sets.back()["radius"] = k.radius;
    }
    bounds.push_back(bound_entry("sets pairwise disjoint", static_cast<long long>(kernels.size()),
                                 static_cast<long long>(kernels.size()), disjoint));
  } else if (opt.mode == "bipartite") {
    VertexSet s = bipartite_qkernel(d, opt.q, opt.girth);
    add_set(s, opt.q);
    const long long size = s.size();
    bounds.push_back(bound_entry("girth * |Q| <= n", n, size * opt.girth, size * opt.girth <= n));
  } else {
    throw UnknownNameError("unknown find mode '" + opt.mode + "'");
  }
  for (const auto& b : bounds)
    if (!b.at("holds").get<bool>()) throw VerificationError("find: bound '" + b.at("claim").get<std::string>() + "' fails");
  return {{"mode", opt.mode}, {"n", n}, {"sets", sets}, {"bounds", bounds}};
}

struct OracleOptions {
  std::string input;
  bool min_qkernel = false;
  bool max_cover = false;
  int q = 2;
  std::string restrict_to;
};

json run_oracle(const OracleOptions& opt) {
  const Digraph d = read_digraph_file(opt.input);
  if (opt.min_qkernel == opt.max_cover) throw CLI::ValidationError("oracle", "pass exactly one of --min-qkernel, --max-cover");
  if (opt.max_cover) {
    auto best = max_covering_quasikernel(d);
    return {{"query", "max-cover"}, {"coverage", best.value}, {"witness", best.witness.members()}};
  }
  std::optional<VertexSet> restrict;
  if (!opt.restrict_to.empty()) {
    if (opt.restrict_to == "U" || opt.restrict_to == "V") {
      auto sides = find_bipartition(d);
      if (!sides) throw PreconditionError("--restrict " + opt.restrict_to + ": digraph is not bipartite");
      restrict = opt.restrict_to == "U" ? sides->u : sides->v;
    } else {
      restrict = parse_set(opt.restrict_to, d.order());
    }
  }
  auto best = min_qkernel(d, opt.q, restrict);
  json out{{"query", "min-qkernel"}, {"q", opt.q}, {"restrict", restrict ? json(restrict->members()) : json(nullptr)}};
  if (best) {
    out["size"] = best->value;
    out["witness"] = best->witness.members();
  } else {
    out["size"] = nullptr;
    out["witness"] = nullptr;
  }
  return out;
}

struct SearchOptions {
  std::string conjecture;
  int n_min = 1;
  int n_max = 4;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  double p = 0.5;
  std::string filters;
  int jobs = 1;
  std::string out;
  std::size_t max_witnesses = 20;
  bool timing = false;
  TargetParams params;
  std::string eps;
};

int run_search(const SearchOptions& opt, std::ostream& out) {
  SearchScope scope;
  scope.n_min = opt.n_min;
  scope.n_max = opt.n_max;
  scope.samples = opt.samples;
  scope.seed = opt.seed;
  scope.arc_probability = opt.p;
  scope.filter = parse_filters(opt.filters);
  scope.jobs = opt.jobs;
  scope.max_witnesses = opt.max_witnesses;
  scope.timing = opt.timing;
  TargetParams params = opt.params;
  if (!opt.eps.empty()) params.eps = parse_rational(opt.eps);

  SearchReport report = opt.conjecture == "c-table" ? c_table(params.delta_max, params.q_max, scope)
                                                    : check_conjecture(opt.conjecture, params, scope);
  const std::string doc = report_to_json(report).dump(2) + "\n";
  if (opt.out.empty()) {
    out << doc;
  } else {
    write_text(opt.out, doc);
    emit(out, {{"target", report.target},
               {"digraphs_checked", report.digraphs_checked},
               {"counterexamples", report.counterexamples.size()},
               {"extremal_witnesses", report.extremal_witnesses.size()},
               {"out", opt.out}});
  }
  return report.counterexamples.empty() ? kOk : kCounterexample;
}

json catalog_json() {
  json list = json::array();
  for (const auto& f : family_catalog())
    list.push_back({{"name", f.name}, {"params", f.params}, {"property", f.property}, {"anchor", f.anchor},
                    {"example", f.example}});
  return list;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernel and quasikernel workbench for small digraphs", "qkernel"};
  app.require_subcommand(1);

  FindOptions find_opt;
  auto* find = app.add_subcommand("find", "Construct a set with one of the constructive algorithms");
  find->add_option("--input", find_opt.input, "Digraph file")->required();
  find->add_option("--mode", find_opt.mode, "quasikernel|small|large-quasikernel|3kernel-large|disjoint|bipartite")
      ->required();
  find->add_option("--q", find_opt.q, "Radius for bipartite mode")->capture_default_str();
  find->add_option("--r", find_opt.r, "Number of disjoint kernels")->capture_default_str();
  find->add_option("--girth", find_opt.girth, "Girth bound for bipartite mode")->capture_default_str();

  std::string verify_input, verify_set;
  int verify_q = 2;
  auto* verify = app.add_subcommand("verify", "Check that a set is a q-kernel");
  verify->add_option("--input", verify_input, "Digraph file")->required();
  verify->add_option("--set", verify_set, "Comma-separated vertices")->required();
  verify->add_option("--q", verify_q, "Radius")->capture_default_str();

  OracleOptions oracle_opt;
  auto* oracle = app.add_subcommand("oracle", "Brute-force answers");
  oracle->add_option("--input", oracle_opt.input, "Digraph file")->required();
  oracle->add_flag("--min-qkernel", oracle_opt.min_qkernel, "Minimum q-kernel");
  oracle->add_flag("--max-cover", oracle_opt.max_cover, "Quasikernel maximizing |N+[Q]|");
  oracle->add_option("--q", oracle_opt.q, "Radius")->capture_default_str();
  oracle->add_option("--restrict", oracle_opt.restrict_to, "U, V or a vertex list");

  SearchOptions search_opt;
  auto* search = app.add_subcommand("search", "Exhaustive or sampled check of a target inequality");
  search->add_option("--conjecture", search_opt.conjecture, "Target id, or c-table")->required();
  search->add_option("--n-min", search_opt.n_min, "Smallest order")->capture_default_str();
  search->add_option("--n-max", search_opt.n_max, "Largest order")->capture_default_str();
  search->add_option("--samples", search_opt.samples, "Random mode with this many samples");
  search->add_option("--seed", search_opt.seed, "Random seed")->capture_default_str();
  search->add_option("--p", search_opt.p, "Arc probability")->capture_default_str();
  search->add_option("--filters", search_opt.filters, "e.g. source-free,girth=5");
  search->add_option("--jobs", search_opt.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  search->add_option("--out", search_opt.out, "Report file (stdout when omitted)");
  search->add_option("--max-witnesses", search_opt.max_witnesses, "Cap per list, 0 keeps all")->capture_default_str();
  search->add_flag("--timing", search_opt.timing, "Record elapsed_ms");
  search->add_option("--q", search_opt.params.q, "Radius")->capture_default_str();
  search->add_option("--r", search_opt.params.r, "Disjoint kernel count")->capture_default_str();
  search->add_option("--k", search_opt.params.k, "Pendant count, 0 means n+1")->capture_default_str();
  search->add_option("--eps", search_opt.eps, "Rational eps, e.g. 1/10");
  search->add_option("--delta-max", search_opt.params.delta_max, "c-table rows")->capture_default_str();
  search->add_option("--q-max", search_opt.params.q_max, "c-table columns")->capture_default_str();

  std::string gen_family, gen_params, gen_out;
  auto* gen = app.add_subcommand("gen", "Build a named family member");
  gen->add_option("--family", gen_family, "Family name")->required();
  gen->add_option("--params", gen_params, "k=v,...");
  gen->add_option("--out", gen_out, "Output file (stdout when omitted)");

  auto* catalog = app.add_subcommand("catalog", "List generator families");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*find) {
      emit(out, run_find(find_opt));
    } else if (*verify) {
      const Digraph d = read_digraph_file(verify_input);
      json cert = certificate_json(d, parse_set(verify_set, d.order()), verify_q);
      emit(out, cert);
      return cert.at("valid").get<bool>() ? kOk : kVerificationFailed;
    } else if (*oracle) {
      emit(out, run_oracle(oracle_opt));
    } else if (*search) {
      return run_search(search_opt, out);
    } else if (*gen) {
      Digraph d = generate(gen_family, parse_params(gen_params));
      if (gen_out.empty()) out << to_text(d);
      else write_digraph_file(gen_out, d);
    } else if (*catalog) {
      emit(out, catalog_json());
    }
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const ParseError& e) {
    err << "malformed digraph: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownNameError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace qk::cli
