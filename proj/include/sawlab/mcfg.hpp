#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sawlab/limits.hpp"

namespace sawlab::mcfg {

struct Token {
  bool is_var = false;
  int terminal = -1;  // when !is_var
  int slot = -1;      // when is_var: tail position
  int index = -1;     // when is_var: component of that tail entry

  static Token lit(int t) { return {false, t, -1, -1}; }
  static Token var(int slot, int index) { return {true, -1, slot, index}; }
  bool operator==(const Token&) const = default;
};

using Component = std::vector<Token>;

// tail[i] lists interchangeable nonterminals for position i (factored rules); all
// alternatives of one position must share a rank.
struct Rule {
  int head = -1;
  std::vector<Component> args;
  std::vector<std::vector<int>> tail;
};

struct Grammar {
  std::vector<std::string> nonterminals;
  std::vector<int> ranks;
  std::vector<std::string> terminals;
  std::vector<Rule> rules;
  int start = -1;

  int add_nonterminal(const std::string& name, int rank);
  int find_nonterminal(std::string_view name) const;
  int terminal(const std::string& label);  // interns
  int find_terminal(std::string_view label) const;
  // Number of rules after expanding every tail alternative.
  std::uint64_t expanded_rule_count() const;
  int max_rank() const;
};

using Word = std::vector<int>;

struct Term {
  int nonterminal = -1;
  std::vector<Word> components;
  bool operator==(const Term&) const = default;
};

struct DerivationTree {
  int rule = -1;
  std::vector<DerivationTree> children;
};

struct GrammarReport {
  std::vector<std::string> violations;
  std::vector<std::string> notes;  // non-fatal, e.g. erasing rules
  int max_rank = 0;
  bool erasing = false;

  bool accepted() const { return violations.empty(); }
};

GrammarReport validate_grammar(const Grammar& g);

Term apply_rule(const Grammar& g, int rule, const std::vector<Term>& terms);
Term evaluate(const Grammar& g, const DerivationTree& tree);

// Saturating derivation count; `saturated` also covers infinitely many derivations.
struct Count {
  std::uint64_t value = 0;
  bool saturated = false;

  bool operator==(const Count&) const = default;
};

struct Recognition {
  bool member = false;
  Count derivations;
};

// Span-item deduction; counts are exact up to `cap`.
Recognition recognize(const Grammar& g, const Word& word, const Limits& limits = {},
                      std::uint64_t cap = UINT64_MAX);

// Every generated word of length <= max_len with its derivation count.
std::map<Word, Count> generate_counted(const Grammar& g, int max_len, const Limits& limits = {},
                                       std::uint64_t cap = UINT64_MAX);
std::vector<Word> generate(const Grammar& g, int max_len, const Limits& limits = {});

struct AmbiguityReport {
  std::map<Word, Count> counts;
  std::vector<Word> ambiguous;  // count >= 2

  bool unambiguous() const { return ambiguous.empty(); }
};

AmbiguityReport check_unambiguous_upto(const Grammar& g, int max_len, const Limits& limits = {});

std::string format_word(const Grammar& g, const Word& w);
// Single-character alphabets read one symbol per character; otherwise symbols are
// separated by spaces.
Word parse_word(const Grammar& g, std::string_view text);

nlohmann::json to_json(const Grammar& g);
Grammar from_json(const nlohmann::json& doc);
Grammar load(const std::string& path);

}  // namespace sawlab::mcfg
