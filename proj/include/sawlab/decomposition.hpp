#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sawlab/limits.hpp"
#include "sawlab/system.hpp"

namespace sawlab {

struct ValidationReport {
  std::size_t k_max = 0;
  std::size_t type_count = 0;
  std::vector<std::string> violations;

  bool accepted() const { return violations.empty(); }
};

ValidationReport validate_system(const ConeTypeSystem& system);

// Throws ErrorKind::Invalid listing the violations when the system is rejected.
void require_valid(const ConeTypeSystem& system);

inline constexpr int kParentSlot = -1;

struct VirtualEdge {
  int slot = kParentSlot;
  LocalVertex u = 0;
  LocalVertex v = 0;
};

struct PartGraph {
  int vertex_count = 0;
  std::vector<EdgeSpec> real_edges;
  std::vector<VirtualEdge> virtual_edges;  // parent slot first, then child slots in order

  std::size_t virtual_count(int slot) const;
};

PartGraph part_graph(const ConeTypeSystem& system, TypeId type);

struct GraphEdge {
  int u = 0;
  int v = 0;
  std::string label_uv;
  std::string label_vu;
};

struct FiniteGraph {
  int vertex_count = 0;
  int origin = 0;
  std::vector<GraphEdge> edges;
  // Ids of vertices/edges in the unfolding this graph was cut from (identity for unfold itself).
  std::vector<int> source_vertex;
  std::vector<int> source_edge;
  int source_depth = 0;  // depth of that unfolding

  std::vector<std::string> label_conflicts() const;
  bool is_deterministic() const { return label_conflicts().empty(); }
  std::size_t degree(int vertex) const;
};

nlohmann::json graph_to_json(const FiniteGraph& graph);

using NodePath = std::vector<int>;

std::string path_name(const NodePath& path);

struct TreeNode {
  NodePath path;
  TypeId type = -1;
  int parent = -1;
  int slot = -1;                // slot index in the parent
  std::vector<int> children;    // per slot; -1 beyond the unfolded depth
  std::vector<int> vertex_ids;  // local vertex -> glued vertex
  std::vector<int> edge_ids;    // own edge -> glued edge
};

struct UnfoldedDecomposition {
  ConeTypeSystem system;
  int depth = 0;
  std::vector<TreeNode> nodes;  // breadth-first, slot order; node 0 is the root
  FiniteGraph graph;
  std::vector<int> edge_owner;  // glued edge -> node
  std::map<NodePath, int> index;

  std::optional<int> find(const NodePath& path) const;
  const ConeType& type_of(int node) const { return system.type(nodes[static_cast<std::size_t>(node)].type); }
  // Glued ids of the adhesion between node and its parent, in the child's adhesion order.
  std::vector<int> adhesion(int node) const;
};

UnfoldedDecomposition unfold(const ConeTypeSystem& system, int depth, const Limits& limits = {});

// Radius-`radius` ball around the origin, found by deepening the unfolding `depth_step`
// levels at a time until the ball is unchanged for limits.stable_increments steps.
FiniteGraph extract_ball(const ConeTypeSystem& system, int radius, const Limits& limits = {},
                         int depth_step = 1);

// Label clashes on the glued graph of an unfolding; the global half of the determinism check.
std::vector<std::string> global_label_conflicts(const ConeTypeSystem& system, int depth,
                                                const Limits& limits = {});

}  // namespace sawlab
