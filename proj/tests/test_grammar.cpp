#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "sawlab/configuration.hpp"
#include "sawlab/contraction.hpp"
#include "sawlab/error.hpp"
#include "sawlab/grammar.hpp"
#include "sawlab/mcfg.hpp"
#include "support.hpp"

using namespace sawlab;
using nlohmann::json;
using testsupport::corpus;

namespace {

std::set<std::string> words_of(const mcfg::Grammar& g, int max_len) {
  std::set<std::string> out;
  for (const auto& w : mcfg::generate(g, max_len)) out.insert(mcfg::format_word(g, w));
  return out;
}

// (head, tail) pairs of an expanded export.
std::vector<std::pair<std::string, std::vector<std::string>>> expanded_heads(const json& doc) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const auto& r : doc["rules"]) {
    std::vector<std::string> tail;
    for (const auto& t : r["tail"]) {
      if (t.is_string()) {
        tail.push_back(t.get<std::string>());
      } else {
        REQUIRE(t.size() == 1);
        tail.push_back(t[0].get<std::string>());
      }
    }
    out.emplace_back(r["head"].get<std::string>(), tail);
  }
  return out;
}

}  // namespace

TEST_CASE("config CFG: line skeleton and weight-one words") {
  const ConeTypeSystem line = corpus("line");
  const ConfigCfg cfg = build_config_cfg(line);
  std::size_t total = 0;
  for (TypeId t = 0; t < static_cast<TypeId>(line.types.size()); ++t) total += enumerate_configurations(line, t).size();
  CHECK(cfg.skeleton.nonterminal_count() + 1 == total + 1);
  std::size_t weight_one = 0;
  enumerate_bounded_configs(cfg, 1, [&](const ConfigAssignment&) { ++weight_one; });
  CHECK(weight_one == 2);
}

TEST_CASE("config CFG: boring nonterminals have exactly one rule, a terminal one") {
  for (const auto& name : testsupport::corpus_systems()) {
    const ConfigCfg cfg = build_config_cfg(corpus(name));
    const mcfg::Grammar g = to_grammar(cfg);
    const auto& sk = cfg.skeleton;
    for (std::size_t nt = 0; nt < sk.nonterminal_count(); ++nt) {
      if (!sk.boring[nt]) continue;
      const int id = g.find_nonterminal(sk.name(static_cast<int>(nt)));
      REQUIRE(id >= 0);
      int rules = 0;
      for (const auto& r : g.rules)
        if (r.head == id) {
          ++rules;
          CHECK(r.tail.empty());
          CHECK(r.args.size() == 1);
        }
      CHECK(rules == 1);
      CHECK(sk.nt_weight[nt] == 0);
    }
  }
}

TEST_CASE("config CFG: derivations of weight at most 3 on the ladder") {
  std::size_t n = 0;
  enumerate_bounded_configs(build_config_cfg(corpus("ladder")), 3, [&](const ConfigAssignment&) { ++n; });
  CHECK(n == 3 + 6 + 12);
}

TEST_CASE("config CFG: weight metadata matches the configuration weight") {
  for (const auto& name : testsupport::corpus_systems()) {
    const ConeTypeSystem sys = corpus(name);
    const json doc = export_grammar(build_config_cfg(sys), false);
    for (const auto& nt : doc["nonterminals"]) {
      if (nt["name"] == "S") continue;
      const TypeId t = sys.find_type(nt["type"].get<std::string>());
      const auto cs = enumerate_configurations(sys, t);
      const Configuration& c = cs.at(nt["config"].get<std::size_t>());
      CHECK(nt["weight"].get<int>() == weight(c));
      if (t != sys.root_type) CHECK(nt["boring"].get<bool>() == is_boring(c, false));
    }
  }
}

TEST_CASE("SAW MCFG: line") {
  const SawMcfg g = build_saw_mcfg(corpus("line"));
  CHECK(max_rank(g) == 1);
  CHECK(check_rank_bound(g, 1));
  const std::set<std::string> expected{"l", "ll", "lll", "llll", "lllll", "r", "rr", "rrr", "rrrr", "rrrrr"};
  CHECK(words_of(to_grammar(g), 5) == expected);
}

TEST_CASE("SAW MCFG: ladder language up to length 8 equals the direct graph's walk words") {
  const SawMcfg g = build_saw_mcfg(corpus("ladder"));
  CHECK(max_rank(g) == 1);
  CHECK(check_rank_bound(g, 2));
  const auto direct = testsupport::direct_census(testsupport::ladder_graph(), 8, true);
  CHECK(words_of(to_grammar(g), 8) == direct.words);
}

TEST_CASE("SAW MCFG: rank bound on the product example") {
  const SawMcfg g = build_saw_mcfg(corpus("paper-example"));
  CHECK(max_rank(g) == 2);
  CHECK(check_rank_bound(g, 3));
  CHECK_FALSE(check_rank_bound(g, 1));
}

TEST_CASE("SAW MCFG: rank zero exactly on boring nonterminals") {
  for (const auto& name : testsupport::corpus_systems()) {
    const SawMcfg g = build_saw_mcfg(corpus(name));
    const auto& sk = g.skeleton;
    for (std::size_t nt = 0; nt < sk.nonterminal_count(); ++nt)
      if (!sk.is_root(static_cast<int>(nt))) CHECK((g.ranks[nt] == 0) == static_cast<bool>(sk.boring[nt]));
  }
}

TEST_CASE("alpha strings: I-walk and U-walk on the ladder") {
  const ConeTypeSystem ladder = corpus("ladder");
  const ConeType& right = ladder.type(ladder.find_type("right"));
  const Configuration i_walk{{{0, 2}, {EdgeRef::real(1)}}, Exit::child(0)};
  const auto a = alpha_strings(right, i_walk, false);
  REQUIRE(a.size() == 1);
  REQUIRE(a[0].size() == 2);
  CHECK(a[0][0] == AlphaToken{false, "r", -1, -1});
  CHECK(a[0][1] == AlphaToken{true, "", 0, 0});

  const Configuration u_walk{{{0, 2, 3, 1}, {EdgeRef::real(1), EdgeRef::real(0), EdgeRef::real(2)}}, Exit::parent()};
  const auto b = alpha_strings(right, u_walk, false);
  REQUIRE(b.size() == 1);
  std::string labels;
  for (const auto& tok : b[0]) labels += tok.label;
  CHECK(labels == "rsl");

  // a child-slot hop becomes one variable; the walk then ends inside that slot, so no trailing one
  const Configuration hop{{{0, 2, 3}, {EdgeRef::real(1), EdgeRef::virt(0)}}, Exit::child(0)};
  const auto c = alpha_strings(right, hop, false);
  REQUIRE(c.size() == 1);
  REQUIRE(c[0].size() == 2);
  CHECK(c[0][1] == AlphaToken{true, "", 0, 0});
}

TEST_CASE("grammars: head and tail determine the rule after expansion") {
  for (const std::string name : {"line", "ladder", "tree3", "free-product-c2-c3"}) {
    CAPTURE(name);
    const ConeTypeSystem sys = corpus(name);
    for (const json& doc : {export_grammar(build_config_cfg(sys), true), export_grammar(build_saw_mcfg(sys), true)}) {
      const auto heads = expanded_heads(doc);
      std::set<std::pair<std::string, std::vector<std::string>>> unique(heads.begin(), heads.end());
      CHECK(unique.size() == heads.size());
    }
  }
}

TEST_CASE("SAW MCFG: every variable used exactly once") {
  for (const auto& name : testsupport::corpus_systems()) {
    CAPTURE(name);
    const mcfg::Grammar g = to_grammar(build_saw_mcfg(corpus(name)));
    const mcfg::GrammarReport rep = mcfg::validate_grammar(g);
    CHECK(rep.accepted());
    CHECK_FALSE(rep.erasing);
  }
}

TEST_CASE("config CFG and SAW MCFG share one skeleton") {
  for (const auto& name : testsupport::corpus_systems()) {
    const ConeTypeSystem sys = corpus(name);
    const mcfg::Grammar a = to_grammar(build_config_cfg(sys));
    const mcfg::Grammar b = to_grammar(build_saw_mcfg(sys));
    CHECK(a.nonterminals == b.nonterminals);
    REQUIRE(a.rules.size() == b.rules.size());
    for (std::size_t i = 0; i < a.rules.size(); ++i) {
      CHECK(a.rules[i].head == b.rules[i].head);
      CHECK(a.rules[i].tail == b.rules[i].tail);
    }
  }
}

TEST_CASE("grammar export is canonical and round-trips through the engine schema") {
  const ConeTypeSystem sys = corpus("ladder");
  const json a = export_grammar(build_saw_mcfg(sys), false);
  CHECK(a.dump() == export_grammar(build_saw_mcfg(sys), false).dump());
  const mcfg::Grammar g = mcfg::from_json(a);
  CHECK(words_of(g, 6) == words_of(to_grammar(build_saw_mcfg(sys)), 6));
  CHECK(a["kind"] == "mcfg");
  CHECK(export_grammar(build_config_cfg(sys), false)["kind"] == "cfg");
}

TEST_CASE("grammar export: expansion respects the item cap") {
  Limits tiny;
  tiny.max_items = 10;
  CHECK_THROWS_AS(export_grammar(build_saw_mcfg(corpus("paper-example")), true, tiny), Error);
}
