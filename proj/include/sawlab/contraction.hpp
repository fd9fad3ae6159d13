#pragma once

#include <compare>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "sawlab/configuration.hpp"
#include "sawlab/decomposition.hpp"
#include "sawlab/grammar.hpp"

namespace sawlab {

// Explicit configurations by tree-node path; nodes not listed carry their boring completion.
struct ConfigAssignment {
  std::map<NodePath, Configuration> configs;

  bool operator==(const ConfigAssignment&) const = default;
};

int total_weight(const ConfigAssignment& a);
nlohmann::json assignment_to_json(const ConfigAssignment& a);

// Walk on the glued graph. edges[i] joins vertices[i] and vertices[i+1].
struct LabelledWalk {
  std::vector<int> vertices;
  std::vector<int> edges;
  std::vector<std::string> labels;

  std::size_t length() const { return edges.size(); }
  std::string word() const;
  auto operator<=>(const LabelledWalk&) const = default;
};

// Walks on contracted parts are written in glued coordinates: a real step names a glued
// edge, a virtual step names the tree edge (child node index) whose adhesion it spans.
struct GlobalStep {
  bool real = true;
  int id = 0;
  auto operator<=>(const GlobalStep&) const = default;
};

struct GlobalWalk {
  std::vector<int> vertices;
  std::vector<GlobalStep> steps;
  auto operator<=>(const GlobalWalk&) const = default;
};

inline constexpr int kSelfExit = -1;

struct GlobalConfig {
  GlobalWalk walk;
  int exit = kSelfExit;  // tree edge id or kSelfExit
  auto operator<=>(const GlobalConfig&) const = default;
};

// p_f for the configurations on both ends of tree edge f.
GlobalWalk combine_walks(const GlobalConfig& upper, const GlobalConfig& lower, int tree_edge,
                         const std::vector<int>& adhesion);

class ContractionState {
 public:
  ContractionState(const UnfoldedDecomposition& dec, const ConfigAssignment& assignment);

  // Contracts tree edge f (identified by its child node); f must still be present.
  void contract(int tree_edge);
  bool contracted(int tree_edge) const { return contracted_.count(tree_edge) > 0; }

  // Explicit non-boring configurations keyed by the sorted member nodes of each part.
  std::map<std::vector<int>, GlobalConfig> normalized() const;
  int total_weight() const;
  GlobalConfig root_config() const { return materialize(0); }
  GlobalConfig materialize(int group) const;

  int group_of(int node) const;
  std::vector<int> members(int group) const;
  const UnfoldedDecomposition& decomposition() const { return *dec_; }

 private:
  bool boring(int group, const GlobalConfig& c) const;
  void store(int group, GlobalConfig c);

  const UnfoldedDecomposition* dec_;
  std::map<int, int> group_;                 // node -> top node of its part, for merged nodes only
  std::map<int, std::vector<int>> members_;  // merged parts only
  std::set<int> contracted_;
  std::map<int, GlobalConfig> explicit_;
};

GlobalConfig to_global(const UnfoldedDecomposition& dec, int node, const Configuration& c);

ContractionState contract_edge(ContractionState state, int tree_edge);

LabelledWalk psi_r(const UnfoldedDecomposition& dec, const ConfigAssignment& assignment);
ConfigAssignment project_saw(const UnfoldedDecomposition& dec, const LabelledWalk& saw);

// project_saw with the vertex-to-node index built once, for projecting many walks.
class SawProjector {
 public:
  explicit SawProjector(const UnfoldedDecomposition& dec);
  ConfigAssignment project(const LabelledWalk& saw) const;

 private:
  const UnfoldedDecomposition* dec_;
  std::vector<std::vector<int>> nodes_of_vertex_;
};

// Attaches direction labels to a vertex/edge sequence of the graph.
LabelledWalk labelled_walk(const FiniteGraph& graph, const std::vector<int>& vertices, const std::vector<int>& edges);

// Depth of the deepest explicit node.
int support_depth(const ConfigAssignment& a);

// Calls `visit` for every bounded consistent assignment of weight <= max_weight, in
// canonical order (start alternative, then slot choices depth first).
void enumerate_bounded_configs(const ConfigCfg& g, int max_weight,
                               const std::function<void(const ConfigAssignment&)>& visit,
                               const Limits& limits = {});
std::vector<ConfigAssignment> enumerate_bounded_configs(const ConeTypeSystem& system, int max_weight,
                                                        const Limits& limits = {});

}  // namespace sawlab
