#include "sawlab/grammar.hpp"

#include <exception>
#include <map>

#include "sawlab/decomposition.hpp"
#include "sawlab/error.hpp"

namespace sawlab {

using nlohmann::json;

const Configuration& GrammarSkeleton::config(int nt) const {
  return configs[static_cast<std::size_t>(nt_type[static_cast<std::size_t>(nt)])]
                [static_cast<std::size_t>(nt_ordinal[static_cast<std::size_t>(nt)])];
}

std::string GrammarSkeleton::name(int nt) const {
  return system.type(nt_type[static_cast<std::size_t>(nt)]).name + "#" +
         std::to_string(nt_ordinal[static_cast<std::size_t>(nt)]);
}

namespace {

std::vector<int> sequence_key(const PartWalk& walk, const std::vector<LocalVertex>& adhesion) {
  std::vector<int> key;
  for (auto [pos, j] : intersection_sequence(walk, adhesion)) key.push_back(j);
  return key;
}

}  // namespace

GrammarSkeleton build_skeleton(const ConeTypeSystem& system, const Limits& limits) {
  require_valid(system);
  GrammarSkeleton sk;
  sk.system = system;
  const std::size_t ntypes = system.types.size();
  sk.configs.resize(ntypes);
  for (std::size_t t = 0; t < ntypes; ++t) {
    sk.configs[t] = enumerate_configurations(system, static_cast<TypeId>(t), limits);
    sk.first.push_back(static_cast<int>(sk.nt_type.size()));
    const bool root = static_cast<TypeId>(t) == system.root_type;
    for (std::size_t i = 0; i < sk.configs[t].size(); ++i) {
      const Configuration& c = sk.configs[t][i];
      sk.nt_type.push_back(static_cast<TypeId>(t));
      sk.nt_ordinal.push_back(static_cast<int>(i));
      sk.boring.push_back(!root && is_boring(c, false));
      sk.nt_weight.push_back(weight(c));
    }
  }

  // child configurations of each type grouped by their adhesion intersection sequence
  std::vector<std::map<std::vector<int>, std::vector<int>>> by_sequence(ntypes);
  for (std::size_t t = 0; t < ntypes; ++t)
    for (std::size_t i = 0; i < sk.configs[t].size(); ++i)
      by_sequence[t][sequence_key(sk.configs[t][i].walk, system.types[t].parent_adhesion)].push_back(static_cast<int>(i));

  const std::size_t n = sk.nonterminal_count();
  sk.slots.assign(n, {});
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t nt = 0; nt < n; ++nt) {
    if (sk.boring[nt]) continue;
    try {
      const TypeId t = sk.nt_type[nt];
      const ConeType& type = system.type(t);
      const Configuration& c = sk.config(static_cast<int>(nt));
      auto& slots = sk.slots[nt];
      slots.resize(type.children.size());
      for (std::size_t s = 0; s < type.children.size(); ++s) {
        const TypeId ct = type.children[s].child_type;
        const auto& index = by_sequence[static_cast<std::size_t>(ct)];
        auto it = index.find(sequence_key(c.walk, type.children[s].embedding));
        if (it == index.end()) continue;
        for (int ord : it->second)
          if (compatible(system, t, static_cast<int>(s), c, ct, sk.configs[static_cast<std::size_t>(ct)][static_cast<std::size_t>(ord)]))
            slots[s].push_back(sk.nonterminal(ct, ord));
      }
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  sk.productive.assign(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t nt = 0; nt < n; ++nt) {
      if (sk.productive[nt]) continue;
      bool p = sk.boring[nt];
      if (!p) {
        p = true;
        for (const auto& alts : sk.slots[nt]) {
          bool any = false;
          for (int a : alts) any = any || sk.productive[static_cast<std::size_t>(a)];
          p = p && any;
        }
      }
      if (p) sk.productive[nt] = changed = true;
    }
  }
  for (std::size_t nt = 0; nt < n; ++nt) {
    if (!sk.productive[nt]) {
      sk.slots[nt].clear();
      continue;
    }
    for (auto& alts : sk.slots[nt])
      std::erase_if(alts, [&sk](int a) { return !sk.productive[static_cast<std::size_t>(a)]; });
  }
  for (std::size_t i = 0; i < sk.configs[static_cast<std::size_t>(system.root_type)].size(); ++i) {
    const int nt = sk.nonterminal(system.root_type, static_cast<int>(i));
    if (sk.productive[static_cast<std::size_t>(nt)]) sk.roots.push_back(nt);
  }
  return sk;
}

ConfigCfg build_config_cfg(const ConeTypeSystem& system, const Limits& limits) {
  return ConfigCfg{build_skeleton(system, limits)};
}

std::vector<Alpha> alpha_strings(const ConeType& type, const Configuration& c, bool is_root) {
  const PartWalk& w = c.walk;
  // z index of each child-virtual edge that starts a maximal run, -1 for run continuations
  std::vector<int> run_index(w.edges.size(), -1);
  std::vector<int> runs(type.children.size(), 0);
  for (std::size_t e = 0; e < w.edges.size(); ++e) {
    const EdgeRef& ref = w.edges[e];
    if (ref.kind != EdgeKind::Virtual || ref.id == kParentSlot) continue;
    if (e > 0 && w.edges[e - 1] == ref) continue;
    run_index[e] = runs[static_cast<std::size_t>(ref.id)]++;
  }

  std::vector<Alpha> out;
  const auto comps = residual_components(c, type, is_root);
  for (const auto& comp : comps) {
    if (comp.kind == ComponentKind::Skipped) continue;
    Alpha a;
    for (std::size_t e = comp.first; e < comp.last; ++e) {
      const EdgeRef& ref = w.edges[e];
      if (ref.kind == EdgeKind::Real) {
        a.push_back({false, type.edges[static_cast<std::size_t>(ref.id)].label_from(w.vertices[e]), -1, -1});
      } else {
        ensure(ref.id != kParentSlot, "alpha: parent virtual edge inside a residual component");
        if (run_index[e] >= 0) a.push_back({true, {}, ref.id, run_index[e]});
      }
    }
    out.push_back(std::move(a));
  }
  if (c.exit.kind == ExitKind::Child) {
    const int i = c.exit.slot;
    if (w.edges.empty() || !w.edges.back().is_virtual(i)) {
      ensure(!out.empty() && comps.back().kind != ComponentKind::Skipped, "alpha: exit component not kept");
      out.back().push_back({true, {}, i, runs[static_cast<std::size_t>(i)]});
    }
  }
  return out;
}

SawMcfg build_saw_mcfg(GrammarSkeleton sk) {
  SawMcfg g;
  const std::size_t n = sk.nonterminal_count();
  g.ranks.resize(n);
  g.alpha.resize(n);
  for (std::size_t nt = 0; nt < n; ++nt) {
    const ConeType& type = sk.system.type(sk.nt_type[nt]);
    const bool root = sk.is_root(static_cast<int>(nt));
    const Configuration& c = sk.config(static_cast<int>(nt));
    g.ranks[nt] = rank(c, type, root);
    if (sk.boring[nt]) continue;
    g.alpha[nt] = alpha_strings(type, c, root);
    ensure(static_cast<int>(g.alpha[nt].size()) == g.ranks[nt],
           "rank computation inconsistency: " + sk.name(static_cast<int>(nt)) + " has " +
               std::to_string(g.alpha[nt].size()) + " strings for rank " + std::to_string(g.ranks[nt]));
  }
  for (std::size_t nt = 0; nt < n; ++nt) {
    if (sk.boring[nt] || !sk.productive[nt]) continue;
    std::vector<int> used(sk.slots[nt].size(), 0);
    for (const auto& a : g.alpha[nt])
      for (const auto& tok : a)
        if (tok.is_var) ++used[static_cast<std::size_t>(tok.slot)];
    for (std::size_t s = 0; s < sk.slots[nt].size(); ++s)
      for (int alt : sk.slots[nt][s])
        ensure(g.ranks[static_cast<std::size_t>(alt)] == used[s],
               "rank computation inconsistency: " + sk.name(static_cast<int>(nt)) + " slot " + std::to_string(s) +
                   " uses " + std::to_string(used[s]) + " variables but " + sk.name(alt) + " has rank " +
                   std::to_string(g.ranks[static_cast<std::size_t>(alt)]));
  }
  g.skeleton = std::move(sk);
  return g;
}

SawMcfg build_saw_mcfg(const ConeTypeSystem& system, const Limits& limits) {
  return build_saw_mcfg(build_skeleton(system, limits));
}

int max_rank(const SawMcfg& g) {
  int m = 0;
  for (int r : g.ranks) m = std::max(m, r);
  return m;
}

bool check_rank_bound(const SawMcfg& g, int k) { return max_rank(g) <= (k + 1) / 2; }

namespace {

// Grammar ids of the productive skeleton nonterminals (-1 for pruned ones).
std::vector<int> add_productive(const GrammarSkeleton& sk, mcfg::Grammar& out, const std::vector<int>& ranks) {
  std::vector<int> id(sk.nonterminal_count(), -1);
  for (std::size_t nt = 0; nt < sk.nonterminal_count(); ++nt)
    if (sk.productive[nt]) id[nt] = out.add_nonterminal(sk.name(static_cast<int>(nt)), ranks[nt]);
  return id;
}

std::vector<std::vector<int>> translate(const std::vector<std::vector<int>>& slots, const std::vector<int>& id) {
  std::vector<std::vector<int>> tail;
  for (const auto& alts : slots) {
    tail.emplace_back();
    for (int a : alts) tail.back().push_back(id[static_cast<std::size_t>(a)]);
  }
  return tail;
}

void add_start(const GrammarSkeleton& sk, mcfg::Grammar& out, const std::vector<int>& id) {
  out.start = out.add_nonterminal("S", 1);
  mcfg::Rule r;
  r.head = out.start;
  r.args = {{mcfg::Token::var(0, 0)}};
  r.tail.emplace_back();
  for (int nt : sk.roots) r.tail.back().push_back(id[static_cast<std::size_t>(nt)]);
  out.rules.push_back(std::move(r));
}

}  // namespace

mcfg::Grammar to_grammar(const ConfigCfg& g) {
  const GrammarSkeleton& sk = g.skeleton;
  mcfg::Grammar out;
  const auto id = add_productive(sk, out, std::vector<int>(sk.nonterminal_count(), 1));
  add_start(sk, out, id);
  for (std::size_t nt = 0; nt < sk.nonterminal_count(); ++nt) {
    if (!sk.productive[nt]) continue;
    mcfg::Rule r;
    r.head = id[nt];
    r.args.emplace_back();
    if (!sk.boring[nt]) {
      r.args[0].push_back(mcfg::Token::lit(out.terminal("a[" + sk.name(static_cast<int>(nt)) + "]")));
      for (std::size_t s = 0; s < sk.slots[nt].size(); ++s) r.args[0].push_back(mcfg::Token::var(static_cast<int>(s), 0));
      r.tail = translate(sk.slots[nt], id);
    }
    out.rules.push_back(std::move(r));
  }
  return out;
}

mcfg::Grammar to_grammar(const SawMcfg& g) {
  const GrammarSkeleton& sk = g.skeleton;
  mcfg::Grammar out;
  const auto id = add_productive(sk, out, g.ranks);
  add_start(sk, out, id);
  for (std::size_t nt = 0; nt < sk.nonterminal_count(); ++nt) {
    if (!sk.productive[nt]) continue;
    mcfg::Rule r;
    r.head = id[nt];
    for (const auto& a : g.alpha[nt]) {
      mcfg::Component comp;
      for (const auto& tok : a)
        comp.push_back(tok.is_var ? mcfg::Token::var(tok.slot, tok.index) : mcfg::Token::lit(out.terminal(tok.label)));
      r.args.push_back(std::move(comp));
    }
    if (!sk.boring[nt]) r.tail = translate(sk.slots[nt], id);
    out.rules.push_back(std::move(r));
  }
  return out;
}

namespace {

json expand_rules(const json& rules, const Limits& limits) {
  json out = json::array();
  for (const auto& r : rules) {
    const json& tail = r["tail"];
    bool empty_alt = false;
    for (const auto& alts : tail) empty_alt = empty_alt || alts.empty();
    if (empty_alt) continue;
    std::vector<std::size_t> pick(tail.size(), 0);
    for (;;) {
      json one = r;
      json t = json::array();
      for (std::size_t i = 0; i < tail.size(); ++i) t.push_back(json::array({tail[i][pick[i]]}));
      one["tail"] = t;
      out.push_back(std::move(one));
      if (out.size() > limits.max_items) fail(ErrorKind::ResourceLimit, "expanded rule count exceeds the cap");
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == tail[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  return out;
}

json decorate(const GrammarSkeleton& sk, json doc, const char* kind, bool expand, const Limits& limits) {
  doc["kind"] = kind;
  std::map<std::string, int> by_name;
  for (std::size_t nt = 0; nt < sk.nonterminal_count(); ++nt) by_name[sk.name(static_cast<int>(nt))] = static_cast<int>(nt);
  for (auto& entry : doc["nonterminals"]) {
    auto it = by_name.find(entry["name"].get<std::string>());
    if (it == by_name.end()) continue;
    const int nt = it->second;
    entry["type"] = sk.system.type(sk.nt_type[static_cast<std::size_t>(nt)]).name;
    entry["config"] = sk.nt_ordinal[static_cast<std::size_t>(nt)];
    entry["weight"] = sk.nt_weight[static_cast<std::size_t>(nt)];
    entry["boring"] = static_cast<bool>(sk.boring[static_cast<std::size_t>(nt)]);
  }
  if (expand) doc["rules"] = expand_rules(doc["rules"], limits);
  return doc;
}

}  // namespace

json export_grammar(const ConfigCfg& g, bool expand, const Limits& limits) {
  return decorate(g.skeleton, mcfg::to_json(to_grammar(g)), "cfg", expand, limits);
}

json export_grammar(const SawMcfg& g, bool expand, const Limits& limits) {
  return decorate(g.skeleton, mcfg::to_json(to_grammar(g)), "mcfg", expand, limits);
}

}  // namespace sawlab
