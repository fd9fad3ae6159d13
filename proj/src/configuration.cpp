#include "sawlab/configuration.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "sawlab/error.hpp"

namespace sawlab {

using nlohmann::json;

bool canonical_less(const Configuration& a, const Configuration& b) {
  auto key = [](const Configuration& c) {
    return std::tie(c.walk.vertices, c.walk.edges, c.exit);
  };
  if (a.is_empty() != b.is_empty()) return a.is_empty();
  if (a.walk.length() != b.walk.length()) return a.walk.length() < b.walk.length();
  return key(a) < key(b);
}

namespace {

struct Arc {
  EdgeRef ref;
  LocalVertex to;
};

std::vector<std::vector<Arc>> part_adjacency(const ConeType& t) {
  std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(t.part_size));
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto& ed = t.edges[e];
    adj[static_cast<std::size_t>(ed.u)].push_back({EdgeRef::real(static_cast<int>(e)), ed.v});
    adj[static_cast<std::size_t>(ed.v)].push_back({EdgeRef::real(static_cast<int>(e)), ed.u});
  }
  auto clique = [&adj](int slot, const std::vector<LocalVertex>& adh) {
    for (LocalVertex a : adh)
      for (LocalVertex b : adh)
        if (a != b) adj[static_cast<std::size_t>(a)].push_back({EdgeRef::virt(slot), b});
  };
  clique(kParentSlot, t.parent_adhesion);
  for (std::size_t s = 0; s < t.children.size(); ++s) clique(static_cast<int>(s), t.children[s].embedding);
  return adj;
}

bool contains(const std::vector<LocalVertex>& xs, LocalVertex v) { return std::find(xs.begin(), xs.end(), v) != xs.end(); }

}  // namespace

std::vector<Configuration> enumerate_configurations(const ConeType& type, bool is_root, LocalVertex origin,
                                                    const Limits& limits) {
  const auto adj = part_adjacency(type);
  std::vector<Configuration> out;
  if (!is_root) out.push_back({PartWalk{}, Exit::parent()});

  auto emit = [&](const PartWalk& w) {
    const LocalVertex last = w.vertices.back();
    if (!w.edges.empty() && w.edges.back().kind == EdgeKind::Real) out.push_back({w, Exit::self()});
    if (!is_root && contains(type.parent_adhesion, last)) out.push_back({w, Exit::parent()});
    for (std::size_t s = 0; s < type.children.size(); ++s)
      if (contains(type.children[s].embedding, last)) out.push_back({w, Exit::child(static_cast<int>(s))});
    if (out.size() > limits.max_configs_per_type)
      fail(ErrorKind::ResourceLimit, "configuration cap of " + std::to_string(limits.max_configs_per_type) +
                                         " exceeded on type \"" + type.name + "\"");
  };

  std::vector<bool> used(static_cast<std::size_t>(type.part_size), false);
  PartWalk walk;
  auto dfs = [&](auto&& self) -> void {
    emit(walk);
    const LocalVertex cur = walk.vertices.back();
    for (const Arc& a : adj[static_cast<std::size_t>(cur)]) {
      if (used[static_cast<std::size_t>(a.to)]) continue;
      used[static_cast<std::size_t>(a.to)] = true;
      walk.vertices.push_back(a.to);
      walk.edges.push_back(a.ref);
      self(self);
      walk.vertices.pop_back();
      walk.edges.pop_back();
      used[static_cast<std::size_t>(a.to)] = false;
    }
  };
  std::vector<LocalVertex> starts = is_root ? std::vector<LocalVertex>{origin} : type.parent_adhesion;
  for (LocalVertex s : starts) {
    used[static_cast<std::size_t>(s)] = true;
    walk.vertices = {s};
    walk.edges.clear();
    dfs(dfs);
    used[static_cast<std::size_t>(s)] = false;
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<Configuration> enumerate_configurations(const ConeTypeSystem& system, TypeId type, const Limits& limits) {
  const bool is_root = type == system.root_type;
  return enumerate_configurations(system.type(type), is_root, is_root ? system.root_vertex : 0, limits);
}

int weight(const Configuration& c) {
  return static_cast<int>(std::count_if(c.walk.edges.begin(), c.walk.edges.end(),
                                        [](const EdgeRef& e) { return e.kind == EdgeKind::Real; }));
}

bool is_boring(const Configuration& c, bool is_root) {
  require(!is_root, "is_boring: root configurations have no parent");
  if (c.exit.kind != ExitKind::Parent) return false;
  return std::all_of(c.walk.edges.begin(), c.walk.edges.end(), [](const EdgeRef& e) { return e.is_virtual(kParentSlot); });
}

int mu(const Configuration& c, const ConeType& type) {
  int count = 0, in_component = 0;
  for (std::size_t i = 0; i < c.walk.vertices.size(); ++i) {
    if (type.adhesion_index(c.walk.vertices[i]) >= 0) ++in_component;
    const bool cut = i == c.walk.edges.size() || c.walk.edges[i].is_virtual(kParentSlot);
    if (cut) {
      if (in_component >= 2) ++count;
      in_component = 0;
    }
  }
  return count;
}

int rank(const Configuration& c, const ConeType& type, bool is_root) {
  if (is_root) return 1;
  const int m = mu(c, type);
  if (c.exit.kind == ExitKind::Parent || c.walk.empty()) return m;
  // adhesion vertices in the final residual component
  int tail = 0;
  for (std::size_t i = c.walk.vertices.size(); i-- > 0;) {
    if (type.adhesion_index(c.walk.vertices[i]) >= 0) ++tail;
    if (i > 0 && c.walk.edges[i - 1].is_virtual(kParentSlot)) break;
  }
  return tail == 1 ? m + 1 : m;
}

std::vector<ResidualComponent> residual_components(const Configuration& c, const ConeType& type, bool is_root) {
  std::vector<ResidualComponent> out;
  const auto& vs = c.walk.vertices;
  if (vs.empty()) return out;
  if (is_root) {
    out.push_back({0, vs.size() - 1, 0, ComponentKind::Final});
    return out;
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const bool cut = i + 1 == vs.size() || c.walk.edges[i].is_virtual(kParentSlot);
    if (!cut) continue;
    ResidualComponent comp{start, i, 0, ComponentKind::Skipped};
    for (std::size_t k = start; k <= i; ++k)
      if (type.adhesion_index(vs[k]) >= 0) ++comp.adhesion_vertices;
    out.push_back(comp);
    start = i + 1;
  }
  for (auto& comp : out) {
    if (comp.adhesion_vertices >= 2) comp.kind = ComponentKind::Returning;
  }
  ResidualComponent& last = out.back();
  if (last.adhesion_vertices == 1 && c.exit.kind != ExitKind::Parent) last.kind = ComponentKind::Final;
  return out;
}

std::vector<std::pair<std::size_t, int>> intersection_sequence(const PartWalk& walk,
                                                                const std::vector<LocalVertex>& adhesion) {
  std::vector<std::pair<std::size_t, int>> out;
  for (std::size_t i = 0; i < walk.vertices.size(); ++i) {
    auto it = std::find(adhesion.begin(), adhesion.end(), walk.vertices[i]);
    if (it != adhesion.end()) out.emplace_back(i, static_cast<int>(it - adhesion.begin()));
  }
  return out;
}

namespace {

bool uses_between(const PartWalk& w, std::size_t from, std::size_t to, int slot) {
  for (std::size_t i = from; i < to; ++i)
    if (w.edges[i].is_virtual(slot)) return true;
  return false;
}

}  // namespace

bool compatible(const ConeTypeSystem& system, TypeId parent_type, int slot, const Configuration& parent,
                TypeId child_type, const Configuration& child) {
  const ConeType& pt = system.type(parent_type);
  require(slot >= 0 && slot < static_cast<int>(pt.children.size()), "compatible: slot out of range");
  const ChildSlot& sl = pt.children[static_cast<std::size_t>(slot)];
  require(sl.child_type == child_type, "compatible: child configuration is not on the slot's type");
  const ConeType& ct = system.type(child_type);

  const auto ps = intersection_sequence(parent.walk, sl.embedding);
  if (child.is_empty()) return ps.empty();
  const auto cs = intersection_sequence(child.walk, ct.parent_adhesion);
  // (C1)
  if (ps.size() != cs.size()) return false;
  for (std::size_t k = 0; k < ps.size(); ++k)
    if (ps[k].second != cs[k].second) return false;
  // (C2)
  for (std::size_t k = 0; k + 1 < ps.size(); ++k) {
    const bool p_virtual = uses_between(parent.walk, ps[k].first, ps[k + 1].first, slot);
    const bool c_virtual = uses_between(child.walk, cs[k].first, cs[k + 1].first, kParentSlot);
    if (p_virtual == c_virtual) return false;
  }
  // (C3)
  const bool parent_exits_here = parent.exit.is_child(slot);
  if (parent_exits_here != (child.exit.kind != ExitKind::Parent)) return false;
  // (C4)
  if (parent_exits_here) return ps.back().first + 1 == parent.walk.vertices.size();
  return cs.back().first + 1 == child.walk.vertices.size();
}

Configuration boring_completion(const ConeTypeSystem& system, TypeId parent_type, int slot, const Configuration& parent) {
  const ConeType& pt = system.type(parent_type);
  require(slot >= 0 && slot < static_cast<int>(pt.children.size()), "boring_completion: slot out of range");
  require(!parent.exit.is_child(slot), "boring_completion: parent exits into this slot");
  require(!uses_between(parent.walk, 0, parent.walk.edges.size(), slot),
          "boring_completion: parent walk uses a virtual edge of this slot");
  const ChildSlot& sl = pt.children[static_cast<std::size_t>(slot)];
  const ConeType& ct = system.type(sl.child_type);
  Configuration c;
  c.exit = Exit::parent();
  for (auto [pos, j] : intersection_sequence(parent.walk, sl.embedding)) {
    if (!c.walk.vertices.empty()) c.walk.edges.push_back(EdgeRef::virt(kParentSlot));
    c.walk.vertices.push_back(ct.parent_adhesion[static_cast<std::size_t>(j)]);
  }
  return c;
}

std::string exit_name(const Exit& e) {
  switch (e.kind) {
    case ExitKind::Self: return "self";
    case ExitKind::Parent: return "parent";
    case ExitKind::Child: return "child:" + std::to_string(e.slot);
  }
  return "?";
}

json configuration_to_json(const Configuration& c) {
  json edges = json::array();
  for (const auto& e : c.walk.edges) {
    if (e.kind == EdgeKind::Real)
      edges.push_back({{"real", e.id}});
    else
      edges.push_back({{"virtual", e.id}});
  }
  json exit = {{"kind", c.exit.kind == ExitKind::Self ? "self" : c.exit.kind == ExitKind::Parent ? "parent" : "child"}};
  if (c.exit.kind == ExitKind::Child) exit["slot"] = c.exit.slot;
  return {{"vertices", c.walk.vertices}, {"edges", edges}, {"exit", exit}};
}

std::string dump_configurations(const ConeTypeSystem& system, TypeId type, const std::vector<Configuration>& configs) {
  const bool is_root = type == system.root_type;
  const ConeType& t = system.type(type);
  std::ostringstream out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    json line = configuration_to_json(configs[i]);
    line["type"] = t.name;
    line["ordinal"] = i;
    line["weight"] = weight(configs[i]);
    line["rank"] = rank(configs[i], t, is_root);
    line["boring"] = !is_root && is_boring(configs[i], false);
    out << line.dump() << '\n';
  }
  return out.str();
}

}  // namespace sawlab
