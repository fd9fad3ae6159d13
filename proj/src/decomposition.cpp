#include "sawlab/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include "sawlab/error.hpp"

namespace sawlab {

using nlohmann::json;

namespace {

std::string tname(const ConeType& t) { return "type \"" + t.name + "\""; }

bool injective(const std::vector<int>& xs) {
  std::set<int> seen(xs.begin(), xs.end());
  return seen.size() == xs.size();
}

bool in_range(const std::vector<int>& xs, int n) {
  return std::all_of(xs.begin(), xs.end(), [n](int x) { return x >= 0 && x < n; });
}

void check_type(const ConeTypeSystem& sys, TypeId id, std::vector<std::string>& out) {
  const ConeType& t = sys.type(id);
  const std::string who = tname(t);
  if (t.part_size < 1) out.push_back(who + ": part_size must be positive");
  if (!in_range(t.parent_adhesion, t.part_size)) out.push_back(who + ": parent adhesion out of range");
  if (!injective(t.parent_adhesion)) out.push_back(who + ": parent adhesion not injective");
  if (id == sys.root_type && !t.parent_adhesion.empty()) out.push_back(who + ": root type must have an empty parent adhesion");
  if (id != sys.root_type && t.parent_adhesion.empty()) out.push_back(who + ": non-root type has an empty parent adhesion");

  std::set<std::tuple<int, int, std::string, std::string>> seen_edges;
  std::set<std::pair<int, std::string>> outgoing;
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const EdgeSpec& ed = t.edges[e];
    const std::string ew = who + ": edge " + std::to_string(e);
    if (ed.u < 0 || ed.u >= t.part_size || ed.v < 0 || ed.v >= t.part_size) {
      out.push_back(ew + " out of range");
      continue;
    }
    if (ed.u == ed.v) {
      out.push_back(ew + " is a loop");
      continue;
    }
    auto key = ed.u < ed.v ? std::make_tuple(ed.u, ed.v, ed.label_uv, ed.label_vu)
                           : std::make_tuple(ed.v, ed.u, ed.label_vu, ed.label_uv);
    if (!seen_edges.insert(key).second) out.push_back(ew + " duplicates an earlier edge");
    for (auto [from, label] : {std::pair{ed.u, ed.label_uv}, std::pair{ed.v, ed.label_vu}}) {
      if (!outgoing.insert({from, label}).second)
        out.push_back(who + ": local label clash, vertex " + std::to_string(from) + " has two outgoing edges labelled \"" +
                      label + "\"");
    }
  }

  for (std::size_t s = 0; s < t.children.size(); ++s) {
    const ChildSlot& slot = t.children[s];
    const std::string sw = who + ": child slot " + std::to_string(s);
    if (slot.child_type < 0) {
      out.push_back(sw + " references unknown type \"" + slot.child_name + "\"");
      continue;
    }
    if (slot.child_type == sys.root_type) out.push_back(sw + " references the root type");
    if (!in_range(slot.embedding, t.part_size)) out.push_back(sw + ": embedding out of range");
    if (!injective(slot.embedding)) out.push_back(sw + ": embedding not injective");
    if (slot.embedding.size() != sys.type(slot.child_type).parent_adhesion.size())
      out.push_back(sw + ": embedding length differs from the child's parent adhesion");
  }
}

}  // namespace

ValidationReport validate_system(const ConeTypeSystem& sys) {
  ValidationReport rep;
  rep.type_count = sys.types.size();
  std::set<std::string> names;
  for (const auto& t : sys.types) {
    if (!names.insert(t.name).second) rep.violations.push_back("duplicate type name \"" + t.name + "\"");
    rep.k_max = std::max(rep.k_max, t.parent_adhesion.size());
    for (const auto& c : t.children) rep.k_max = std::max(rep.k_max, c.embedding.size());
  }
  if (sys.root_type < 0) {
    rep.violations.push_back("root type \"" + sys.root_name + "\" does not exist");
    for (TypeId id = 0; id < static_cast<TypeId>(sys.types.size()); ++id) check_type(sys, id, rep.violations);
    return rep;
  }
  if (sys.root_vertex < 0 || sys.root_vertex >= sys.root().part_size)
    rep.violations.push_back("root vertex out of range");
  for (TypeId id = 0; id < static_cast<TypeId>(sys.types.size()); ++id) check_type(sys, id, rep.violations);

  const std::size_t n = sys.types.size();
  std::vector<bool> reached(n, false);
  std::vector<TypeId> stack{sys.root_type};
  reached[static_cast<std::size_t>(sys.root_type)] = true;
  while (!stack.empty()) {
    TypeId cur = stack.back();
    stack.pop_back();
    for (const auto& c : sys.type(cur).children)
      if (c.child_type >= 0 && !reached[static_cast<std::size_t>(c.child_type)]) {
        reached[static_cast<std::size_t>(c.child_type)] = true;
        stack.push_back(c.child_type);
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!reached[i]) rep.violations.push_back(tname(sys.types[i]) + " is unreachable from the root");

  std::vector<bool> productive(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (productive[i]) continue;
      bool p = !sys.types[i].edges.empty();
      for (const auto& c : sys.types[i].children)
        p = p || (c.child_type >= 0 && productive[static_cast<std::size_t>(c.child_type)]);
      if (p) productive[i] = changed = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!productive[i]) rep.violations.push_back(tname(sys.types[i]) + " is unproductive (owns no edge, nor do its descendants)");

  if (rep.violations.empty()) {
    try {
      for (auto& clash : global_label_conflicts(sys, static_cast<int>(n) + 2))
        rep.violations.push_back("global label clash: " + clash);
    } catch (const Error& e) {
      rep.violations.push_back(std::string("global label check failed: ") + e.what());
    }
  }
  return rep;
}

void require_valid(const ConeTypeSystem& system) {
  ValidationReport rep = validate_system(system);
  if (rep.accepted()) return;
  std::string msg = "system rejected:";
  for (const auto& v : rep.violations) msg += "\n  " + v;
  fail(ErrorKind::Invalid, msg);
}

std::size_t PartGraph::virtual_count(int slot) const {
  return static_cast<std::size_t>(
      std::count_if(virtual_edges.begin(), virtual_edges.end(), [slot](const VirtualEdge& e) { return e.slot == slot; }));
}

PartGraph part_graph(const ConeTypeSystem& system, TypeId id) {
  const ConeType& t = system.type(id);
  PartGraph g;
  g.vertex_count = t.part_size;
  g.real_edges = t.edges;
  auto add_clique = [&g](int slot, const std::vector<int>& adh) {
    for (std::size_t i = 0; i < adh.size(); ++i)
      for (std::size_t j = i + 1; j < adh.size(); ++j) g.virtual_edges.push_back({slot, adh[i], adh[j]});
  };
  add_clique(kParentSlot, t.parent_adhesion);
  for (std::size_t s = 0; s < t.children.size(); ++s) add_clique(static_cast<int>(s), t.children[s].embedding);
  return g;
}

std::vector<std::string> FiniteGraph::label_conflicts() const {
  std::set<std::pair<int, std::string>> outgoing;
  std::vector<std::string> out;
  for (const auto& e : edges)
    for (auto [from, label] : {std::pair{e.u, e.label_uv}, std::pair{e.v, e.label_vu}})
      if (!outgoing.insert({from, label}).second)
        out.push_back("vertex " + std::to_string(from) + " has two outgoing edges labelled \"" + label + "\"");
  return out;
}

std::size_t FiniteGraph::degree(int vertex) const {
  return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [vertex](const GraphEdge& e) {
    return e.u == vertex || e.v == vertex;
  }));
}

json graph_to_json(const FiniteGraph& graph) {
  json vertices = json::array();
  for (int v = 0; v < graph.vertex_count; ++v) vertices.push_back(v);
  std::vector<std::tuple<int, int, std::string>> directed;
  for (const auto& e : graph.edges) {
    directed.emplace_back(e.u, e.v, e.label_uv);
    directed.emplace_back(e.v, e.u, e.label_vu);
  }
  std::sort(directed.begin(), directed.end());
  json edges = json::array();
  for (const auto& [from, to, label] : directed) edges.push_back({{"from", from}, {"to", to}, {"label", label}});
  return {{"origin", graph.origin}, {"vertices", vertices}, {"edges", edges}};
}

std::string path_name(const NodePath& path) {
  std::string s = "r";
  for (int i : path) s += "." + std::to_string(i);
  return s;
}

std::optional<int> UnfoldedDecomposition::find(const NodePath& path) const {
  auto it = index.find(path);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<int> UnfoldedDecomposition::adhesion(int node) const {
  const TreeNode& n = nodes[static_cast<std::size_t>(node)];
  std::vector<int> out;
  for (LocalVertex v : type_of(node).parent_adhesion) out.push_back(n.vertex_ids[static_cast<std::size_t>(v)]);
  return out;
}

UnfoldedDecomposition unfold(const ConeTypeSystem& system, int depth, const Limits& limits) {
  require(depth >= 0, "unfold: negative depth");
  require(system.root_type >= 0, "unfold: system has no root type");
  UnfoldedDecomposition dec;
  dec.system = system;
  dec.depth = depth;
  FiniteGraph& g = dec.graph;

  auto instantiate = [&](TreeNode node) {
    const ConeType& t = system.type(node.type);
    node.vertex_ids.assign(static_cast<std::size_t>(t.part_size), -1);
    if (node.parent >= 0) {
      const TreeNode& par = dec.nodes[static_cast<std::size_t>(node.parent)];
      const auto& emb = system.type(par.type).children[static_cast<std::size_t>(node.slot)].embedding;
      for (std::size_t j = 0; j < t.parent_adhesion.size(); ++j)
        node.vertex_ids[static_cast<std::size_t>(t.parent_adhesion[j])] = par.vertex_ids[static_cast<std::size_t>(emb[j])];
    }
    for (auto& vid : node.vertex_ids)
      if (vid < 0) vid = g.vertex_count++;
    if (static_cast<std::size_t>(g.vertex_count) > limits.max_vertices)
      fail(ErrorKind::ResourceLimit, "unfold: vertex cap of " + std::to_string(limits.max_vertices) + " exceeded");
    const int self = static_cast<int>(dec.nodes.size());
    for (const auto& e : t.edges) {
      node.edge_ids.push_back(static_cast<int>(g.edges.size()));
      g.edges.push_back({node.vertex_ids[static_cast<std::size_t>(e.u)], node.vertex_ids[static_cast<std::size_t>(e.v)],
                         e.label_uv, e.label_vu});
      dec.edge_owner.push_back(self);
    }
    node.children.assign(t.children.size(), -1);
    dec.index.emplace(node.path, self);
    dec.nodes.push_back(std::move(node));
    return self;
  };

  TreeNode root;
  root.type = system.root_type;
  instantiate(std::move(root));
  for (std::size_t cur = 0; cur < dec.nodes.size(); ++cur) {
    if (static_cast<int>(dec.nodes[cur].path.size()) >= depth) continue;
    const ConeType& t = system.type(dec.nodes[cur].type);
    for (std::size_t s = 0; s < t.children.size(); ++s) {
      TreeNode child;
      child.path = dec.nodes[cur].path;
      child.path.push_back(static_cast<int>(s));
      child.type = t.children[s].child_type;
      child.parent = static_cast<int>(cur);
      child.slot = static_cast<int>(s);
      int id = instantiate(std::move(child));
      dec.nodes[cur].children[s] = id;
    }
  }
  g.origin = dec.nodes[0].vertex_ids[static_cast<std::size_t>(system.root_vertex)];
  g.source_depth = depth;
  g.source_vertex.resize(static_cast<std::size_t>(g.vertex_count));
  for (int v = 0; v < g.vertex_count; ++v) g.source_vertex[static_cast<std::size_t>(v)] = v;
  g.source_edge.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) g.source_edge[e] = static_cast<int>(e);
  return dec;
}

namespace {

// Vertices within distance `radius` of the origin and the edges among them, as sorted glued ids.
std::pair<std::vector<int>, std::vector<int>> ball_signature(const FiniteGraph& g, int radius) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count));
  for (const auto& e : g.edges) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count), -1);
  std::deque<int> queue{g.origin};
  dist[static_cast<std::size_t>(g.origin)] = 0;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (dist[static_cast<std::size_t>(x)] == radius) continue;
    for (int y : adj[static_cast<std::size_t>(x)])
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        queue.push_back(y);
      }
  }
  std::vector<int> verts, edges;
  for (int v = 0; v < g.vertex_count; ++v)
    if (dist[static_cast<std::size_t>(v)] >= 0) verts.push_back(v);
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (dist[static_cast<std::size_t>(g.edges[e].u)] >= 0 && dist[static_cast<std::size_t>(g.edges[e].v)] >= 0)
      edges.push_back(static_cast<int>(e));
  return {verts, edges};
}

}  // namespace

FiniteGraph extract_ball(const ConeTypeSystem& system, int radius, const Limits& limits, int depth_step) {
  require(radius >= 0, "extract_ball: negative radius");
  require(depth_step >= 1, "extract_ball: depth step must be positive");
  std::pair<std::vector<int>, std::vector<int>> previous;
  int stable = -1;
  for (int depth = 0; depth <= limits.max_ball_depth; depth += depth_step) {
    UnfoldedDecomposition dec = unfold(system, depth, limits);
    auto sig = ball_signature(dec.graph, radius);
    stable = (stable >= 0 && sig == previous) ? stable + 1 : 0;
    previous = std::move(sig);
    if (stable < limits.stable_increments) continue;

    const auto& [verts, edges] = previous;
    FiniteGraph ball;
    ball.vertex_count = static_cast<int>(verts.size());
    std::vector<int> renumber(static_cast<std::size_t>(dec.graph.vertex_count), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) renumber[static_cast<std::size_t>(verts[i])] = static_cast<int>(i);
    ball.origin = renumber[static_cast<std::size_t>(dec.graph.origin)];
    ball.source_vertex = verts;
    ball.source_edge = edges;
    ball.source_depth = depth;
    for (int e : edges) {
      GraphEdge ge = dec.graph.edges[static_cast<std::size_t>(e)];
      ge.u = renumber[static_cast<std::size_t>(ge.u)];
      ge.v = renumber[static_cast<std::size_t>(ge.v)];
      ball.edges.push_back(std::move(ge));
    }
    return ball;
  }
  fail(ErrorKind::ResourceLimit, "extract_ball: radius-" + std::to_string(radius) +
                                     " ball did not stabilize within depth " + std::to_string(limits.max_ball_depth));
}

std::vector<std::string> global_label_conflicts(const ConeTypeSystem& system, int depth, const Limits& limits) {
  return unfold(system, depth, limits).graph.label_conflicts();
}

}  // namespace sawlab
