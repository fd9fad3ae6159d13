#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sawlab/decomposition.hpp"
#include "sawlab/limits.hpp"
#include "sawlab/system.hpp"

namespace sawlab {

enum class EdgeKind : std::uint8_t { Real, Virtual };

// Real: id indexes own_edges. Virtual: id is the slot (kParentSlot or a child index);
// the endpoints come from the surrounding walk.
struct EdgeRef {
  EdgeKind kind = EdgeKind::Real;
  int id = 0;

  static EdgeRef real(int index) { return {EdgeKind::Real, index}; }
  static EdgeRef virt(int slot) { return {EdgeKind::Virtual, slot}; }
  bool is_virtual(int slot) const { return kind == EdgeKind::Virtual && id == slot; }
  auto operator<=>(const EdgeRef&) const = default;
};

// vertices.size() == edges.size() + 1 unless the walk is empty.
struct PartWalk {
  std::vector<LocalVertex> vertices;
  std::vector<EdgeRef> edges;

  bool empty() const { return vertices.empty(); }
  std::size_t length() const { return edges.size(); }
  auto operator<=>(const PartWalk&) const = default;
};

enum class ExitKind : std::uint8_t { Self, Parent, Child };

struct Exit {
  ExitKind kind = ExitKind::Parent;
  int slot = -1;

  static Exit self() { return {ExitKind::Self, -1}; }
  static Exit parent() { return {ExitKind::Parent, -1}; }
  static Exit child(int s) { return {ExitKind::Child, s}; }
  bool is_child(int s) const { return kind == ExitKind::Child && slot == s; }
  auto operator<=>(const Exit&) const = default;
};

struct Configuration {
  PartWalk walk;
  Exit exit;

  bool is_empty() const { return walk.empty(); }
  bool operator==(const Configuration&) const = default;
};

// Canonical order: empty first, then (length, vertex sequence, edge tags, exit).
bool canonical_less(const Configuration& a, const Configuration& b);

std::vector<Configuration> enumerate_configurations(const ConeType& type, bool is_root, LocalVertex origin = 0,
                                                    const Limits& limits = {});
// Same, for a type of a system (is_root and origin taken from the system).
std::vector<Configuration> enumerate_configurations(const ConeTypeSystem& system, TypeId type,
                                                    const Limits& limits = {});

int weight(const Configuration& c);
bool is_boring(const Configuration& c, bool is_root);
int mu(const Configuration& c, const ConeType& type);
int rank(const Configuration& c, const ConeType& type, bool is_root);

enum class ComponentKind : std::uint8_t { Returning, Final, Skipped };

// A maximal piece of the walk after deleting parent-slot virtual edges.
struct ResidualComponent {
  std::size_t first = 0;  // vertex positions in the walk, inclusive
  std::size_t last = 0;
  int adhesion_vertices = 0;
  ComponentKind kind = ComponentKind::Skipped;
};

// Returning components meet the adhesion at least twice; a Final component is the
// last piece when it meets the adhesion once and the exit is not the parent.
// On the root the whole walk is one Final component.
std::vector<ResidualComponent> residual_components(const Configuration& c, const ConeType& type, bool is_root);

bool compatible(const ConeTypeSystem& system, TypeId parent_type, int slot, const Configuration& parent,
                TypeId child_type, const Configuration& child);

Configuration boring_completion(const ConeTypeSystem& system, TypeId parent_type, int slot,
                                const Configuration& parent);

// Positions in the walk of vertices lying in the given local vertex list, paired with
// their index in that list.
std::vector<std::pair<std::size_t, int>> intersection_sequence(const PartWalk& walk,
                                                                const std::vector<LocalVertex>& adhesion);

std::string exit_name(const Exit& e);
nlohmann::json configuration_to_json(const Configuration& c);
// One JSON object per line, canonical order.
std::string dump_configurations(const ConeTypeSystem& system, TypeId type, const std::vector<Configuration>& configs);

}  // namespace sawlab
