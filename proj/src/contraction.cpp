#include "sawlab/contraction.hpp"

#include <algorithm>
#include <unordered_set>

#include "sawlab/error.hpp"

namespace sawlab {

using nlohmann::json;

int total_weight(const ConfigAssignment& a) {
  int w = 0;
  for (const auto& [path, c] : a.configs) w += weight(c);
  return w;
}

json assignment_to_json(const ConfigAssignment& a) {
  json out = json::object();
  for (const auto& [path, c] : a.configs) out[path_name(path)] = configuration_to_json(c);
  return out;
}

std::string LabelledWalk::word() const {
  std::string w;
  for (const auto& l : labels) w += l;
  return w;
}

LabelledWalk labelled_walk(const FiniteGraph& graph, const std::vector<int>& vertices, const std::vector<int>& edges) {
  require(vertices.size() == edges.size() + 1, "labelled_walk: vertex/edge count mismatch");
  LabelledWalk w{vertices, edges, {}};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const GraphEdge& e = graph.edges.at(static_cast<std::size_t>(edges[i]));
    require((e.u == vertices[i] && e.v == vertices[i + 1]) || (e.v == vertices[i] && e.u == vertices[i + 1]),
            "labelled_walk: edge does not join consecutive vertices");
    w.labels.push_back(e.u == vertices[i] ? e.label_uv : e.label_vu);
  }
  return w;
}

GlobalConfig to_global(const UnfoldedDecomposition& dec, int node, const Configuration& c) {
  const TreeNode& n = dec.nodes.at(static_cast<std::size_t>(node));
  auto child_edge = [&](int slot) {
    const int child = n.children.at(static_cast<std::size_t>(slot));
    require(child >= 0, "configuration support exceeds the instantiated tree at " + path_name(n.path));
    return child;
  };
  GlobalConfig g;
  for (LocalVertex v : c.walk.vertices) g.walk.vertices.push_back(n.vertex_ids.at(static_cast<std::size_t>(v)));
  for (const EdgeRef& e : c.walk.edges) {
    if (e.kind == EdgeKind::Real)
      g.walk.steps.push_back({true, n.edge_ids.at(static_cast<std::size_t>(e.id))});
    else if (e.id == kParentSlot)
      g.walk.steps.push_back({false, node});
    else
      g.walk.steps.push_back({false, child_edge(e.id)});
  }
  switch (c.exit.kind) {
    case ExitKind::Self: g.exit = kSelfExit; break;
    case ExitKind::Parent:
      require(node != 0, "root configuration cannot exit to a parent");
      g.exit = node;
      break;
    case ExitKind::Child: g.exit = child_edge(c.exit.slot); break;
  }
  return g;
}

namespace {

std::vector<std::size_t> positions_in(const std::vector<int>& walk, const std::vector<int>& adhesion) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < walk.size(); ++i)
    if (std::find(adhesion.begin(), adhesion.end(), walk[i]) != adhesion.end()) out.push_back(i);
  return out;
}

bool uses_edge(const GlobalWalk& w, std::size_t from, std::size_t to, int tree_edge) {
  for (std::size_t i = from; i < to; ++i)
    if (!w.steps[i].real && w.steps[i].id == tree_edge) return true;
  return false;
}

void append(GlobalWalk& out, const GlobalWalk& src, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    out.steps.push_back(src.steps[i]);
    out.vertices.push_back(src.vertices[i + 1]);
  }
}

}  // namespace

GlobalWalk combine_walks(const GlobalConfig& upper, const GlobalConfig& lower, int tree_edge,
                         const std::vector<int>& adhesion) {
  const GlobalWalk& U = upper.walk;
  const GlobalWalk& L = lower.walk;
  const auto ps = positions_in(U.vertices, adhesion);
  if (L.vertices.empty()) {
    require(ps.empty(), "combine_walks: empty lower walk but the upper walk meets the adhesion");
    return U;
  }
  const auto cs = positions_in(L.vertices, adhesion);
  require(!ps.empty() && ps.size() == cs.size() && cs.front() == 0, "combine_walks: intersection sequences differ");
  for (std::size_t k = 0; k < ps.size(); ++k)
    require(U.vertices[ps[k]] == L.vertices[cs[k]], "combine_walks: intersection sequences differ");

  GlobalWalk out;
  out.vertices.push_back(U.vertices[0]);
  append(out, U, 0, ps[0]);
  for (std::size_t k = 0; k + 1 < ps.size(); ++k) {
    const bool up_virtual = uses_edge(U, ps[k], ps[k + 1], tree_edge);
    const bool low_virtual = uses_edge(L, cs[k], cs[k + 1], tree_edge);
    require(up_virtual != low_virtual, "combine_walks: alternation condition violated");
    if (up_virtual)
      append(out, L, cs[k], cs[k + 1]);
    else
      append(out, U, ps[k], ps[k + 1]);
  }
  if (upper.exit == tree_edge) {
    require(ps.back() + 1 == U.vertices.size(), "combine_walks: upper walk continues past the last shared vertex");
    append(out, L, cs.back(), L.steps.size());
  } else {
    require(cs.back() + 1 == L.vertices.size(), "combine_walks: lower walk continues past the last shared vertex");
    append(out, U, ps.back(), U.steps.size());
  }
  std::unordered_set<int> seen(out.vertices.begin(), out.vertices.end());
  require(seen.size() == out.vertices.size(), "combine_walks: result is not self-avoiding");
  require(!uses_edge(out, 0, out.steps.size(), tree_edge), "combine_walks: contracted virtual edge survived");
  return out;
}

ContractionState::ContractionState(const UnfoldedDecomposition& dec, const ConfigAssignment& assignment)
    : dec_(&dec) {
  require(assignment.configs.count(NodePath{}) > 0, "assignment has no root configuration");
  for (const auto& [path, c] : assignment.configs) {
    auto node = dec.find(path);
    require(node.has_value(), "assignment node " + path_name(path) + " is not instantiated");
    store(*node, to_global(dec, *node, c));
  }
}

bool ContractionState::boring(int group, const GlobalConfig& c) const {
  if (group == 0 || c.exit != group) return false;
  return std::all_of(c.walk.steps.begin(), c.walk.steps.end(), [group](const GlobalStep& s) { return !s.real && s.id == group; });
}

void ContractionState::store(int group, GlobalConfig c) {
  if (boring(group, c))
    explicit_.erase(group);
  else
    explicit_[group] = std::move(c);
}

GlobalConfig ContractionState::materialize(int group) const {
  if (auto it = explicit_.find(group); it != explicit_.end()) return it->second;
  ensure(group != 0, "root part has no configuration");
  const int parent_group = group_of(dec_->nodes[static_cast<std::size_t>(group)].parent);
  const GlobalConfig pc = materialize(parent_group);
  require(pc.exit != group && !uses_edge(pc.walk, 0, pc.walk.steps.size(), group),
          "inconsistent assignment: a part without configuration is entered by its parent");
  GlobalConfig c;
  c.exit = group;
  const auto adh = dec_->adhesion(group);
  for (std::size_t p : positions_in(pc.walk.vertices, adh)) {
    if (!c.walk.vertices.empty()) c.walk.steps.push_back({false, group});
    c.walk.vertices.push_back(pc.walk.vertices[p]);
  }
  return c;
}

void ContractionState::contract(int f) {
  require(f > 0 && f < static_cast<int>(dec_->nodes.size()), "contract: tree edge out of range");
  require(!contracted(f), "contract: edge already contracted");
  const int a = group_of(dec_->nodes[static_cast<std::size_t>(f)].parent);
  const int b = group_of(f);
  ensure(b == f, "contract: child side is not the top of its part");
  const GlobalConfig ca = materialize(a);
  const GlobalConfig cb = materialize(b);
  GlobalConfig merged;
  merged.walk = combine_walks(ca, cb, f, dec_->adhesion(f));
  if (ca.exit != f && ca.exit != kSelfExit)
    merged.exit = ca.exit;
  else if (cb.exit != f && cb.exit != kSelfExit)
    merged.exit = cb.exit;
  else
    merged.exit = kSelfExit;
  std::vector<int> moved = members(b);
  std::vector<int> into = members(a);
  for (int m : moved) group_[m] = a;
  into.insert(into.end(), moved.begin(), moved.end());
  std::sort(into.begin(), into.end());
  members_[a] = std::move(into);
  members_.erase(b);
  explicit_.erase(b);
  contracted_.insert(f);
  store(a, std::move(merged));
}

int ContractionState::group_of(int node) const {
  auto it = group_.find(node);
  return it == group_.end() ? node : it->second;
}

std::vector<int> ContractionState::members(int group) const {
  auto it = members_.find(group);
  return it == members_.end() ? std::vector<int>{group} : it->second;
}

std::map<std::vector<int>, GlobalConfig> ContractionState::normalized() const {
  std::map<std::vector<int>, GlobalConfig> out;
  for (const auto& [g, c] : explicit_) out.emplace(members(g), c);
  return out;
}

int ContractionState::total_weight() const {
  int w = 0;
  for (const auto& [g, c] : explicit_)
    w += static_cast<int>(std::count_if(c.walk.steps.begin(), c.walk.steps.end(), [](const GlobalStep& s) { return s.real; }));
  return w;
}

ContractionState contract_edge(ContractionState state, int tree_edge) {
  state.contract(tree_edge);
  return state;
}

LabelledWalk psi_r(const UnfoldedDecomposition& dec, const ConfigAssignment& assignment) {
  ContractionState state(dec, assignment);
  std::vector<int> edges;
  for (const auto& [nodes, c] : state.normalized())
    for (int n : nodes)
      if (n != 0) edges.push_back(n);
  std::sort(edges.begin(), edges.end());
  for (int f : edges) state.contract(f);
  const GlobalConfig root = state.root_config();
  require(root.exit == kSelfExit, "psi_r: contracted root configuration does not end in the root part");
  std::vector<int> ids;
  for (const auto& s : root.walk.steps) {
    require(s.real, "psi_r: virtual edge left after contraction");
    ids.push_back(s.id);
  }
  return labelled_walk(dec.graph, root.walk.vertices, ids);
}

SawProjector::SawProjector(const UnfoldedDecomposition& dec)
    : dec_(&dec), nodes_of_vertex_(static_cast<std::size_t>(dec.graph.vertex_count)) {
  for (std::size_t n = 0; n < dec.nodes.size(); ++n)
    for (int v : dec.nodes[n].vertex_ids) nodes_of_vertex_[static_cast<std::size_t>(v)].push_back(static_cast<int>(n));
}

namespace {

// Slot of `from` leading toward `to` in the decomposition tree, or kParentSlot.
int toward(const UnfoldedDecomposition& dec, int from, int to) {
  const NodePath& a = dec.nodes[static_cast<std::size_t>(from)].path;
  const NodePath& b = dec.nodes[static_cast<std::size_t>(to)].path;
  if (b.size() > a.size() && std::equal(a.begin(), a.end(), b.begin())) return b[a.size()];
  return kParentSlot;
}

LocalVertex local_vertex(const TreeNode& n, int glued) {
  auto it = std::find(n.vertex_ids.begin(), n.vertex_ids.end(), glued);
  ensure(it != n.vertex_ids.end(), "projection: vertex not in part");
  return static_cast<LocalVertex>(it - n.vertex_ids.begin());
}

}  // namespace

ConfigAssignment SawProjector::project(const LabelledWalk& saw) const {
  const UnfoldedDecomposition& dec = *dec_;
  require(!saw.edges.empty(), "project_saw: walk has no edges");
  require(saw.vertices.size() == saw.edges.size() + 1, "project_saw: malformed walk");
  require(saw.vertices[0] == dec.graph.origin, "project_saw: walk does not start at the origin");
  for (int v : saw.vertices)
    require(v >= 0 && v < dec.graph.vertex_count, "project_saw: walk leaves the instantiated region");
  for (int e : saw.edges)
    require(e >= 0 && e < static_cast<int>(dec.graph.edges.size()), "project_saw: walk leaves the instantiated region");

  std::vector<int> touched;
  for (int v : saw.vertices)
    for (int n : nodes_of_vertex_[static_cast<std::size_t>(v)]) touched.push_back(n);
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  const int final_owner = dec.edge_owner[static_cast<std::size_t>(saw.edges.back())];
  ConfigAssignment out;
  for (int t : touched) {
    const TreeNode& node = dec.nodes[static_cast<std::size_t>(t)];
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < saw.vertices.size(); ++i)
      if (std::find(node.vertex_ids.begin(), node.vertex_ids.end(), saw.vertices[i]) != node.vertex_ids.end()) kept.push_back(i);
    Configuration c;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      c.walk.vertices.push_back(local_vertex(node, saw.vertices[kept[k]]));
      if (k + 1 == kept.size()) break;
      const int first_edge = saw.edges[kept[k]];
      const int owner = dec.edge_owner[static_cast<std::size_t>(first_edge)];
      if (kept[k + 1] == kept[k] + 1 && owner == t) {
        auto it = std::find(node.edge_ids.begin(), node.edge_ids.end(), first_edge);
        c.walk.edges.push_back(EdgeRef::real(static_cast<int>(it - node.edge_ids.begin())));
      } else {
        c.walk.edges.push_back(EdgeRef::virt(toward(dec, t, owner)));
      }
    }
    if (final_owner == t) {
      c.exit = Exit::self();
    } else {
      const int slot = toward(dec, t, final_owner);
      c.exit = slot == kParentSlot ? Exit::parent() : Exit::child(slot);
    }
    if (t != 0 && is_boring(c, false)) continue;
    out.configs.emplace(node.path, std::move(c));
  }
  return out;
}

ConfigAssignment project_saw(const UnfoldedDecomposition& dec, const LabelledWalk& saw) {
  return SawProjector(dec).project(saw);
}

int support_depth(const ConfigAssignment& a) {
  int d = 0;
  for (const auto& [path, c] : a.configs) d = std::max(d, static_cast<int>(path.size()));
  return d;
}

void enumerate_bounded_configs(const ConfigCfg& g, int max_weight,
                               const std::function<void(const ConfigAssignment&)>& visit, const Limits& limits) {
  require(max_weight >= 0, "enumerate_bounded_configs: negative weight bound");
  const GrammarSkeleton& sk = g.skeleton;
  const std::size_t n = sk.nonterminal_count();
  constexpr int kInf = 1 << 29;

  // least weight of a derivation from each nonterminal
  std::vector<int> minw(n, kInf);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t nt = 0; nt < n; ++nt) {
      if (!sk.productive[nt]) continue;
      int w = sk.nt_weight[nt];
      if (!sk.boring[nt])
        for (const auto& alts : sk.slots[nt]) {
          int best = kInf;
          for (int a : alts) best = std::min(best, minw[static_cast<std::size_t>(a)]);
          w = std::min(kInf, w + best);
        }
      if (w < minw[nt]) {
        minw[nt] = w;
        changed = true;
      }
    }
  }
  auto slot_min = [&](int nt, std::size_t s) {
    int best = kInf;
    for (int a : sk.slots[static_cast<std::size_t>(nt)][s]) best = std::min(best, minw[static_cast<std::size_t>(a)]);
    return best;
  };

  ConfigAssignment current;
  using Cont = std::function<void(int)>;
  std::function<void(int, const NodePath&, int, const Cont&)> node;
  std::function<void(int, std::size_t, const NodePath&, int, int, const Cont&)> slots;

  node = [&](int nt, const NodePath& path, int budget, const Cont& k) {
    if (sk.boring[static_cast<std::size_t>(nt)]) {
      k(0);
      return;
    }
    if (minw[static_cast<std::size_t>(nt)] > budget) return;
    if (path.size() > limits.max_assignment_depth)
      fail(ErrorKind::ResourceLimit, "enumerate_bounded_configs: support depth cap exceeded");
    current.configs[path] = sk.config(nt);
    slots(nt, 0, path, budget - sk.nt_weight[static_cast<std::size_t>(nt)], sk.nt_weight[static_cast<std::size_t>(nt)], k);
    current.configs.erase(path);
  };

  slots = [&](int nt, std::size_t s, const NodePath& path, int left, int used, const Cont& k) {
    const auto& tmpl = sk.slots[static_cast<std::size_t>(nt)];
    if (s == tmpl.size()) {
      k(used);
      return;
    }
    int rest = 0;
    for (std::size_t r = s + 1; r < tmpl.size(); ++r) rest += slot_min(nt, r);
    if (rest > left) return;
    NodePath child = path;
    child.push_back(static_cast<int>(s));
    for (int alt : tmpl[s]) {
      if (minw[static_cast<std::size_t>(alt)] + rest > left) continue;
      node(alt, child, left - rest, [&](int u) { slots(nt, s + 1, path, left - u, used + u, k); });
    }
  };

  for (int root : sk.roots) node(root, NodePath{}, max_weight, [&](int) { visit(current); });
}

std::vector<ConfigAssignment> enumerate_bounded_configs(const ConeTypeSystem& system, int max_weight,
                                                        const Limits& limits) {
  std::vector<ConfigAssignment> out;
  ConfigCfg g = build_config_cfg(system, limits);
  enumerate_bounded_configs(g, max_weight, [&](const ConfigAssignment& a) { out.push_back(a); }, limits);
  return out;
}

}  // namespace sawlab
