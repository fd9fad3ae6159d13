#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sawlab/configuration.hpp"
#include "sawlab/limits.hpp"
#include "sawlab/mcfg.hpp"
#include "sawlab/system.hpp"

namespace sawlab {

// Nonterminals are (type, configuration ordinal) pairs numbered type by type. Each
// non-boring nonterminal has one rule template: per child slot, the compatible child
// nonterminals.
struct GrammarSkeleton {
  ConeTypeSystem system;
  std::vector<std::vector<Configuration>> configs;  // per type, canonical order
  std::vector<int> first;                           // nonterminal of (type, ordinal 0)
  std::vector<TypeId> nt_type;
  std::vector<int> nt_ordinal;
  std::vector<bool> boring;
  std::vector<int> nt_weight;
  std::vector<bool> productive;
  std::vector<std::vector<std::vector<int>>> slots;  // per nonterminal; productive alternatives only
  std::vector<int> roots;                            // productive root nonterminals

  std::size_t nonterminal_count() const { return nt_type.size(); }
  int nonterminal(TypeId type, int ordinal) const { return first[static_cast<std::size_t>(type)] + ordinal; }
  const Configuration& config(int nt) const;
  bool is_root(int nt) const { return nt_type[static_cast<std::size_t>(nt)] == system.root_type; }
  std::string name(int nt) const;
};

GrammarSkeleton build_skeleton(const ConeTypeSystem& system, const Limits& limits = {});

struct ConfigCfg {
  GrammarSkeleton skeleton;
};

struct AlphaToken {
  bool is_var = false;
  std::string label;
  int slot = -1;
  int index = -1;
  bool operator==(const AlphaToken&) const = default;
};

using Alpha = std::vector<AlphaToken>;

struct SawMcfg {
  GrammarSkeleton skeleton;
  std::vector<int> ranks;                 // per nonterminal
  std::vector<std::vector<Alpha>> alpha;  // per nonterminal, ranks[nt] strings
};

ConfigCfg build_config_cfg(const ConeTypeSystem& system, const Limits& limits = {});
SawMcfg build_saw_mcfg(const ConeTypeSystem& system, const Limits& limits = {});
SawMcfg build_saw_mcfg(GrammarSkeleton skeleton);

// Strings of one template; exposed for tests.
std::vector<Alpha> alpha_strings(const ConeType& type, const Configuration& c, bool is_root);

int max_rank(const SawMcfg& g);
bool check_rank_bound(const SawMcfg& g, int k);

// Engine views over productive nonterminals; the start symbol is "S".
mcfg::Grammar to_grammar(const ConfigCfg& g);
mcfg::Grammar to_grammar(const SawMcfg& g);

nlohmann::json export_grammar(const ConfigCfg& g, bool expand, const Limits& limits = {});
nlohmann::json export_grammar(const SawMcfg& g, bool expand, const Limits& limits = {});

}  // namespace sawlab
