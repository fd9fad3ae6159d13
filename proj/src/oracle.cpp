#include "sawlab/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "sawlab/contraction.hpp"
#include "sawlab/error.hpp"
#include "sawlab/grammar.hpp"
#include "sawlab/kernels.hpp"
#include "sawlab/mcfg.hpp"

namespace sawlab {

using nlohmann::json;

std::string join_labels(const std::vector<std::string>& labels, bool compact) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += labels[i];
  }
  return out;
}

bool compact_alphabet(const FiniteGraph& graph) {
  return std::all_of(graph.edges.begin(), graph.edges.end(),
                     [](const GraphEdge& e) { return e.label_uv.size() == 1 && e.label_vu.size() == 1; });
}

namespace {

struct OracleGraph {
  kernels::ArcGraph arcs;
  std::vector<std::string> alphabet;
};

OracleGraph arc_graph(const FiniteGraph& graph) {
  OracleGraph og;
  std::set<std::string> labels;
  for (const auto& e : graph.edges) {
    labels.insert(e.label_uv);
    labels.insert(e.label_vu);
  }
  og.alphabet.assign(labels.begin(), labels.end());
  auto id = [&](const std::string& l) {
    return static_cast<int>(std::lower_bound(og.alphabet.begin(), og.alphabet.end(), l) - og.alphabet.begin());
  };
  // arcs sorted by (source, label) so traversal order is canonical
  std::vector<std::tuple<int, int, int>> arcs;
  for (const auto& e : graph.edges) {
    arcs.emplace_back(e.u, id(e.label_uv), e.v);
    arcs.emplace_back(e.v, id(e.label_vu), e.u);
  }
  std::sort(arcs.begin(), arcs.end());
  auto& a = og.arcs;
  a.origin = graph.origin;
  a.offsets.assign(static_cast<std::size_t>(graph.vertex_count) + 1, 0);
  for (const auto& [from, label, to] : arcs) {
    ++a.offsets[static_cast<std::size_t>(from) + 1];
    a.target.push_back(to);
    a.label.push_back(label);
  }
  for (std::size_t i = 1; i < a.offsets.size(); ++i) a.offsets[i] += a.offsets[i - 1];
  return og;
}

}  // namespace

SawCensus enumerate_saws(const FiniteGraph& graph, int max_len, bool keep_words, Execution exec) {
  require(max_len >= 0, "enumerate_saws: negative length bound");
  const OracleGraph og = arc_graph(graph);
  const kernels::CensusResult raw = exec == Execution::Parallel ? kernels::saw_census_parallel(og.arcs, max_len, keep_words)
                                                                : kernels::saw_census_serial(og.arcs, max_len, keep_words);
  SawCensus census;
  census.max_len = max_len;
  census.counts = raw.counts;
  if (!keep_words) return census;
  const bool compact = compact_alphabet(graph);
  census.words.resize(static_cast<std::size_t>(max_len));
  for (const auto& w : raw.label_words) {
    std::vector<std::string> labels;
    for (int l : w) labels.push_back(og.alphabet[static_cast<std::size_t>(l)]);
    census.words[w.size() - 1].push_back(join_labels(labels, compact));
  }
  for (std::size_t n = 0; n < census.words.size(); ++n) {
    auto& ws = census.words[n];
    std::sort(ws.begin(), ws.end());
    ensure(std::adjacent_find(ws.begin(), ws.end()) == ws.end(),
           "two self-avoiding walks share a label word; the labelling is not deterministic");
    ensure(ws.size() == census.counts[n], "census word list and count disagree");
  }
  return census;
}

CountReport compare_counts(const ConeTypeSystem& system, int max_len, const Limits& limits) {
  require(max_len >= 1, "compare_counts: length bound must be at least 1");
  require_valid(system);
  const SawCensus census = enumerate_saws(extract_ball(system, max_len, limits), max_len, false);
  const std::vector<BigInt> grammar = saw_coefficients(system, max_len, limits);
  CountReport rep;
  rep.pass = true;
  for (int n = 1; n <= max_len; ++n) {
    CountRow row{n, BigInt(census.counts[static_cast<std::size_t>(n - 1)]), grammar[static_cast<std::size_t>(n - 1)], false};
    row.match = row.oracle == row.grammar;
    rep.pass = rep.pass && row.match;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

LanguageReport compare_languages(const ConeTypeSystem& system, int max_len, const Limits& limits) {
  require(max_len >= 1, "compare_languages: length bound must be at least 1");
  require_valid(system);
  const FiniteGraph ball = extract_ball(system, max_len, limits);
  const bool compact = compact_alphabet(ball);
  const SawCensus census = enumerate_saws(ball, max_len, true);
  std::set<std::string> oracle;
  for (const auto& ws : census.words) oracle.insert(ws.begin(), ws.end());

  const mcfg::Grammar g = to_grammar(build_saw_mcfg(system, limits));
  std::set<std::string> generated;
  for (const auto& w : mcfg::generate(g, max_len, limits)) {
    if (w.empty()) continue;
    std::vector<std::string> labels;
    for (int t : w) labels.push_back(g.terminals[static_cast<std::size_t>(t)]);
    generated.insert(join_labels(labels, compact));
  }
  // the empty word never corresponds to a walk of positive length
  LanguageReport rep;
  rep.max_len = max_len;
  rep.oracle_words = oracle.size();
  rep.grammar_words = generated.size();
  std::set_difference(oracle.begin(), oracle.end(), generated.begin(), generated.end(), std::back_inserter(rep.only_oracle));
  std::set_difference(generated.begin(), generated.end(), oracle.begin(), oracle.end(), std::back_inserter(rep.only_grammar));
  rep.pass = rep.only_oracle.empty() && rep.only_grammar.empty();
  return rep;
}

namespace {

// Every self-avoiding walk of length 1..max_len from the origin, as vertex/edge id lists.
std::vector<std::pair<std::vector<int>, std::vector<int>>> all_saws(const FiniteGraph& g, int max_len) {
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.vertex_count));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    adj[static_cast<std::size_t>(g.edges[e].u)].emplace_back(static_cast<int>(e), g.edges[e].v);
    adj[static_cast<std::size_t>(g.edges[e].v)].emplace_back(static_cast<int>(e), g.edges[e].u);
  }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  std::vector<char> on(static_cast<std::size_t>(g.vertex_count), 0);
  std::vector<int> vs{g.origin}, es;
  on[static_cast<std::size_t>(g.origin)] = 1;
  auto dfs = [&](auto&& self) -> void {
    if (static_cast<int>(es.size()) == max_len) return;
    for (auto [e, w] : adj[static_cast<std::size_t>(vs.back())]) {
      if (on[static_cast<std::size_t>(w)]) continue;
      on[static_cast<std::size_t>(w)] = 1;
      vs.push_back(w);
      es.push_back(e);
      out.emplace_back(vs, es);
      self(self);
      vs.pop_back();
      es.pop_back();
      on[static_cast<std::size_t>(w)] = 0;
    }
  };
  dfs(dfs);
  return out;
}

}  // namespace

BijectionReport bijection_check(const ConeTypeSystem& system, int max_weight, const Limits& limits) {
  require(max_weight >= 1, "bijection_check: weight bound must be at least 1");
  require_valid(system);
  BijectionReport rep;
  rep.max_weight = max_weight;
  rep.assignments.assign(static_cast<std::size_t>(max_weight), 0);
  rep.saws.assign(static_cast<std::size_t>(max_weight), 0);
  auto note = [&rep](const std::string& msg) {
    if (rep.failures.size() < 10) rep.failures.push_back(msg);
  };

  const ConfigCfg cfg = build_config_cfg(system, limits);
  std::vector<ConfigAssignment> assignments;
  enumerate_bounded_configs(cfg, max_weight, [&](const ConfigAssignment& a) { assignments.push_back(a); }, limits);
  const FiniteGraph ball = extract_ball(system, max_weight, limits);

  int depth = ball.source_depth;
  for (const auto& a : assignments) depth = std::max(depth, support_depth(a));
  const UnfoldedDecomposition dec = unfold(system, depth, limits);
  const SawProjector projector(dec);

  rep.weight_is_length = true;
  rep.round_trips = true;
  std::set<std::vector<int>> images;
  for (const auto& a : assignments) {
    const int w = total_weight(a);
    if (w < 1 || w > max_weight) {
      rep.weight_is_length = false;
      note("assignment of weight " + std::to_string(w) + " outside 1.." + std::to_string(max_weight));
      continue;
    }
    ++rep.assignments[static_cast<std::size_t>(w - 1)];
    const LabelledWalk walk = psi_r(dec, a);
    if (static_cast<int>(walk.length()) != w) {
      rep.weight_is_length = false;
      note("weight " + std::to_string(w) + " mapped to a walk of length " + std::to_string(walk.length()));
    }
    if (!images.insert(walk.edges).second) note("two assignments map to the walk " + walk.word());
    if (projector.project(walk) != a) {
      rep.round_trips = false;
      note("projecting psi_r of an assignment does not give it back (walk " + walk.word() + ")");
    }
  }
  rep.injective = images.size() == assignments.size();

  std::set<std::vector<int>> oracle;
  for (const auto& [vs, es] : all_saws(ball, max_weight)) {
    ++rep.saws[es.size() - 1];
    std::vector<int> gv, ge;
    for (int v : vs) gv.push_back(ball.source_vertex[static_cast<std::size_t>(v)]);
    for (int e : es) ge.push_back(ball.source_edge[static_cast<std::size_t>(e)]);
    oracle.insert(ge);
    const LabelledWalk walk = labelled_walk(dec.graph, gv, ge);
    const LabelledWalk back = psi_r(dec, projector.project(walk));
    if (back != walk) {
      rep.round_trips = false;
      note("psi_r of the projection of " + walk.word() + " is " + back.word());
    }
  }
  rep.surjective = oracle == images;
  if (!rep.surjective) note("image of psi_r differs from the oracle walk set");
  rep.pass = rep.injective && rep.surjective && rep.weight_is_length && rep.round_trips;
  return rep;
}

std::string format_report(const CountReport& r) {
  std::ostringstream out;
  out << "n\toracle\tgrammar\tmatch\n";
  for (const auto& row : r.rows) out << row.n << '\t' << row.oracle << '\t' << row.grammar << '\t' << (row.match ? "yes" : "NO") << '\n';
  out << "counts: " << (r.pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string format_report(const LanguageReport& r) {
  std::ostringstream out;
  out << "language up to length " << r.max_len << ": oracle " << r.oracle_words << " words, grammar " << r.grammar_words
      << " words\n";
  for (const auto& w : r.only_oracle) out << "  only in oracle: " << w << '\n';
  for (const auto& w : r.only_grammar) out << "  only in grammar: " << w << '\n';
  out << "language: " << (r.pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string format_report(const BijectionReport& r) {
  std::ostringstream out;
  out << "weight\tassignments\tsaws\n";
  for (int n = 1; n <= r.max_weight; ++n)
    out << n << '\t' << r.assignments[static_cast<std::size_t>(n - 1)] << '\t' << r.saws[static_cast<std::size_t>(n - 1)] << '\n';
  out << "injective " << (r.injective ? "yes" : "NO") << ", surjective " << (r.surjective ? "yes" : "NO")
      << ", weight = length " << (r.weight_is_length ? "yes" : "NO") << ", round trips " << (r.round_trips ? "yes" : "NO")
      << '\n';
  for (const auto& f : r.failures) out << "  " << f << '\n';
  out << "bijection: " << (r.pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

json report_json(const CountReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n}, {"oracle", row.oracle.str()}, {"grammar", row.grammar.str()}, {"match", row.match}});
  return {{"rows", rows}, {"pass", r.pass}};
}

json report_json(const LanguageReport& r) {
  return {{"max_len", r.max_len},
          {"oracle_words", r.oracle_words},
          {"grammar_words", r.grammar_words},
          {"only_oracle", r.only_oracle},
          {"only_grammar", r.only_grammar},
          {"pass", r.pass}};
}

json report_json(const BijectionReport& r) {
  return {{"max_weight", r.max_weight}, {"assignments", r.assignments}, {"saws", r.saws},
          {"injective", r.injective},   {"surjective", r.surjective},   {"weight_is_length", r.weight_is_length},
          {"round_trips", r.round_trips}, {"failures", r.failures},     {"pass", r.pass}};
}

}  // namespace sawlab
