#include <set>

#include "sawlab/error.hpp"
#include "sawlab/mcfg.hpp"
#include "sawlab/system.hpp"

namespace sawlab::mcfg {

using nlohmann::json;

json to_json(const Grammar& g) {
  json nts = json::array();
  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) nts.push_back({{"name", g.nonterminals[i]}, {"rank", g.ranks[i]}});
  json rules = json::array();
  for (const auto& r : g.rules) {
    json args = json::array();
    for (const auto& comp : r.args) {
      json c = json::array();
      for (const Token& t : comp) {
        if (t.is_var)
          c.push_back({{"var", {t.slot, t.index}}});
        else
          c.push_back({{"lit", g.terminals[static_cast<std::size_t>(t.terminal)]}});
      }
      args.push_back(c);
    }
    json tail = json::array();
    for (const auto& alts : r.tail) {
      json a = json::array();
      for (int nt : alts) a.push_back(g.nonterminals[static_cast<std::size_t>(nt)]);
      tail.push_back(a);
    }
    rules.push_back({{"head", g.nonterminals[static_cast<std::size_t>(r.head)]}, {"args", args}, {"tail", tail}});
  }
  return {{"version", 1},
          {"kind", "mcfg"},
          {"start", g.start >= 0 ? json(g.nonterminals[static_cast<std::size_t>(g.start)]) : json(nullptr)},
          {"terminals", g.terminals},
          {"nonterminals", nts},
          {"rules", rules}};
}

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  require(obj.is_object(), where + ": expected an object");
  for (const auto& [key, _] : obj.items()) require(allowed.count(key) > 0, where + ": unknown field \"" + key + "\"");
}

const json& field(const json& obj, const char* name, const std::string& where) {
  require(obj.contains(name), where + ": missing field \"" + name + "\"");
  return obj[name];
}

int nonterminal_id(const Grammar& g, const json& v, const std::string& where) {
  require(v.is_string(), where + ": expected a nonterminal name");
  int id = g.find_nonterminal(v.get<std::string>());
  require(id >= 0, where + ": unknown nonterminal \"" + v.get<std::string>() + "\"");
  return id;
}

}  // namespace

Grammar from_json(const json& doc) {
  check_keys(doc, {"version", "kind", "start", "terminals", "nonterminals", "rules"}, "grammar");
  require(field(doc, "version", "grammar") == 1, "grammar: unsupported version");
  if (doc.contains("kind"))
    require(doc["kind"] == "mcfg" || doc["kind"] == "cfg", "grammar: kind must be \"mcfg\" or \"cfg\"");
  Grammar g;
  if (doc.contains("terminals")) {
    require(doc["terminals"].is_array(), "grammar.terminals: expected an array");
    for (const auto& t : doc["terminals"]) {
      require(t.is_string(), "grammar.terminals: expected strings");
      g.terminal(t.get<std::string>());
    }
  }
  const json& nts = field(doc, "nonterminals", "grammar");
  require(nts.is_array(), "grammar.nonterminals: expected an array");
  for (std::size_t i = 0; i < nts.size(); ++i) {
    const std::string where = "nonterminals[" + std::to_string(i) + "]";
    check_keys(nts[i], {"name", "rank", "type", "config", "weight", "boring"}, where);
    const json& name = field(nts[i], "name", where);
    const json& rank = field(nts[i], "rank", where);
    require(name.is_string() && rank.is_number_integer() && rank.get<int>() >= 0, where + ": bad name or rank");
    g.add_nonterminal(name.get<std::string>(), rank.get<int>());
  }
  g.start = nonterminal_id(g, field(doc, "start", "grammar"), "grammar.start");

  const json& rules = field(doc, "rules", "grammar");
  require(rules.is_array(), "grammar.rules: expected an array");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const std::string where = "rules[" + std::to_string(i) + "]";
    check_keys(rules[i], {"head", "args", "tail"}, where);
    Rule r;
    r.head = nonterminal_id(g, field(rules[i], "head", where), where + ".head");
    const json& args = field(rules[i], "args", where);
    require(args.is_array(), where + ".args: expected an array");
    for (const auto& comp : args) {
      require(comp.is_array(), where + ".args: each component must be an array");
      Component c;
      for (const auto& tok : comp) {
        check_keys(tok, {"lit", "var"}, where + ".args token");
        if (tok.contains("lit")) {
          require(tok["lit"].is_string() && !tok.contains("var"), where + ": malformed literal token");
          c.push_back(Token::lit(g.terminal(tok["lit"].get<std::string>())));
        } else {
          const json& v = field(tok, "var", where);
          require(v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer(),
                  where + ": variable tokens are [slot, index]");
          c.push_back(Token::var(v[0].get<int>(), v[1].get<int>()));
        }
      }
      r.args.push_back(std::move(c));
    }
    const json& tail = field(rules[i], "tail", where);
    require(tail.is_array(), where + ".tail: expected an array");
    for (const auto& entry : tail) {
      std::vector<int> alts;
      if (entry.is_string()) {
        alts.push_back(nonterminal_id(g, entry, where + ".tail"));
      } else {
        require(entry.is_array(), where + ".tail: entries are names or lists of names");
        for (const auto& a : entry) alts.push_back(nonterminal_id(g, a, where + ".tail"));
      }
      r.tail.push_back(std::move(alts));
    }
    g.rules.push_back(std::move(r));
  }
  return g;
}

Grammar load(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Invalid, std::string("grammar: JSON parse error: ") + e.what());
  }
  return from_json(doc);
}

}  // namespace sawlab::mcfg
