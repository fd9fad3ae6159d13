#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "sawlab/configuration.hpp"
#include "sawlab/error.hpp"
#include "support.hpp"

using namespace sawlab;
using testsupport::corpus;

namespace {

// Configurations counted straight from the definition: self-avoiding walks on the part
// multigraph (own edges plus a complete graph per adhesion), each walk paired with every
// admissible exit, plus the empty configuration off the root.
std::size_t count_configurations_directly(const ConeTypeSystem& sys, TypeId t) {
  const ConeType& type = sys.type(t);
  const bool root = t == sys.root_type;
  std::vector<std::vector<int>> adhesions;  // parent first when present
  if (!root) adhesions.push_back(type.parent_adhesion);
  for (const auto& c : type.children) adhesions.push_back(c.embedding);

  auto in = [](const std::vector<int>& xs, int v) { return std::find(xs.begin(), xs.end(), v) != xs.end(); };
  std::size_t total = root ? 0 : 1;
  std::vector<int> walk;
  std::vector<bool> last_real;  // per step, whether the step was an own edge
  std::function<void()> go = [&]() {
    const int v = walk.back();
    if (!last_real.empty() && last_real.back()) ++total;  // exit into this part
    if (!root && in(type.parent_adhesion, v)) ++total;
    for (const auto& c : type.children)
      if (in(c.embedding, v)) ++total;
    // own edges and virtual edges to each neighbour, counted with multiplicity
    std::map<int, std::pair<int, int>> steps;  // neighbour -> (own edges, virtual edges)
    for (const auto& e : type.edges) {
      if (e.u == v) ++steps[e.v].first;
      if (e.v == v) ++steps[e.u].first;
    }
    for (const auto& a : adhesions)
      if (in(a, v))
        for (int y : a)
          if (y != v) ++steps[y].second;
    for (const auto& [w, mult] : steps) {
      if (in(walk, w)) continue;
      walk.push_back(w);
      for (int k = 0; k < mult.first + mult.second; ++k) {
        last_real.push_back(k < mult.first);
        go();
        last_real.pop_back();
      }
      walk.pop_back();
    }
  };
  const std::vector<int> starts = root ? std::vector<int>{sys.root_vertex} : type.parent_adhesion;
  for (int s : starts) {
    walk = {s};
    go();
  }
  return total;
}

// Residual components after deleting parent-slot virtual edges, as vertex lists.
std::vector<std::vector<int>> residual_pieces(const Configuration& c) {
  std::vector<std::vector<int>> out;
  if (c.walk.empty()) return out;
  out.push_back({c.walk.vertices[0]});
  for (std::size_t i = 0; i < c.walk.edges.size(); ++i) {
    if (c.walk.edges[i].is_virtual(kParentSlot)) out.push_back({});
    out.back().push_back(c.walk.vertices[i + 1]);
  }
  return out;
}

int adhesion_hits(const std::vector<int>& piece, const ConeType& type) {
  return static_cast<int>(std::count_if(piece.begin(), piece.end(), [&](int v) { return type.adhesion_index(v) >= 0; }));
}

Configuration make(std::vector<int> vs, std::vector<EdgeRef> es, Exit x) { return {{std::move(vs), std::move(es)}, x}; }

bool uses_slot(const Configuration& c, int slot) {
  return std::any_of(c.walk.edges.begin(), c.walk.edges.end(), [slot](const EdgeRef& e) { return e.is_virtual(slot); });
}

}  // namespace

TEST_CASE("configurations: line type includes the empty configuration and the crossing walk") {
  const ConeTypeSystem line = corpus("line");
  const TypeId right = line.find_type("right");
  const auto cs = enumerate_configurations(line, right);
  CHECK(std::count(cs.begin(), cs.end(), Configuration{}) == 1);
  const Configuration crossing = make({0, 1}, {EdgeRef::real(0)}, Exit::child(0));
  CHECK(std::find(cs.begin(), cs.end(), crossing) != cs.end());
  // trivial walk at the adhesion vertex with exit to the parent, and the crossing walk exiting here
  CHECK(std::find(cs.begin(), cs.end(), make({0}, {}, Exit::parent())) != cs.end());
  CHECK(std::find(cs.begin(), cs.end(), make({0, 1}, {EdgeRef::real(0)}, Exit::self())) != cs.end());
  CHECK(cs.size() == 4);
}

TEST_CASE("configurations: empty configuration exactly once and never on the root") {
  for (const auto& name : testsupport::corpus_systems()) {
    const ConeTypeSystem sys = corpus(name);
    for (TypeId t = 0; t < static_cast<TypeId>(sys.types.size()); ++t) {
      CAPTURE(name);
      CAPTURE(t);
      const auto cs = enumerate_configurations(sys, t);
      const auto empties = std::count_if(cs.begin(), cs.end(), [](const Configuration& c) { return c.is_empty(); });
      CHECK(empties == (t == sys.root_type ? 0 : 1));
    }
  }
}

TEST_CASE("configurations: counts agree with a direct enumeration from the definition") {
  for (const auto& name : testsupport::corpus_systems()) {
    const ConeTypeSystem sys = corpus(name);
    for (TypeId t = 0; t < static_cast<TypeId>(sys.types.size()); ++t) {
      CAPTURE(name);
      CAPTURE(sys.type(t).name);
      CHECK(enumerate_configurations(sys, t).size() == count_configurations_directly(sys, t));
    }
  }
}

TEST_CASE("configurations: canonical order is strict and stable") {
  for (const auto& name : testsupport::corpus_systems()) {
    const ConeTypeSystem sys = corpus(name);
    for (TypeId t = 0; t < static_cast<TypeId>(sys.types.size()); ++t) {
      const auto cs = enumerate_configurations(sys, t);
      CHECK(cs.front().is_empty() == (t != sys.root_type));
      for (std::size_t i = 1; i < cs.size(); ++i) CHECK(canonical_less(cs[i - 1], cs[i]));
      CHECK(cs == enumerate_configurations(sys, t));
    }
  }
}

TEST_CASE("configurations: well-formedness of every enumerated configuration") {
  for (const auto& name : testsupport::corpus_systems()) {
    const ConeTypeSystem sys = corpus(name);
    for (TypeId t = 0; t < static_cast<TypeId>(sys.types.size()); ++t) {
      const ConeType& type = sys.type(t);
      const bool root = t == sys.root_type;
      for (const auto& c : enumerate_configurations(sys, t)) {
        if (c.is_empty()) {
          CHECK(c.exit.kind == ExitKind::Parent);
          continue;
        }
        const auto& vs = c.walk.vertices;
        CHECK(vs.size() == c.walk.edges.size() + 1);
        CHECK(std::set<int>(vs.begin(), vs.end()).size() == vs.size());
        if (root)
          CHECK(vs.front() == sys.root_vertex);
        else
          CHECK(type.adhesion_index(vs.front()) >= 0);
        if (c.exit.kind == ExitKind::Self) {
          REQUIRE_FALSE(c.walk.edges.empty());
          CHECK(c.walk.edges.back().kind == EdgeKind::Real);
        }
        if (c.exit.kind == ExitKind::Parent) {
          CHECK_FALSE(root);
          CHECK(type.adhesion_index(vs.back()) >= 0);
        }
        if (c.exit.kind == ExitKind::Child) {
          const auto& emb = type.children[static_cast<std::size_t>(c.exit.slot)].embedding;
          CHECK(std::find(emb.begin(), emb.end(), vs.back()) != emb.end());
        }
      }
    }
  }
}

TEST_CASE("weight and boring") {
  CHECK(weight(Configuration{}) == 0);
  CHECK(is_boring(Configuration{}, false));
  const ConeTypeSystem ex = corpus("paper-example");
  const ConeType& prism = ex.type(ex.find_type("prism_a"));
  // 0 -a- 3, virtual hop 3-4 in the child triangle, 4 -t- 5 -a- 2, virtual hop 2-1 in the parent triangle
  const Configuration c = make({0, 3, 4, 5, 2, 1},
                               {EdgeRef::real(0), EdgeRef::virt(0), EdgeRef::real(4), EdgeRef::real(2), EdgeRef::virt(kParentSlot)},
                               Exit::parent());
  CHECK(weight(c) == 3);
  CHECK_FALSE(is_boring(c, false));
  CHECK(mu(c, prism) == 1);

  const ConeTypeSystem ladder = corpus("ladder");
  const ConeType& right = ladder.type(ladder.find_type("right"));
  const Configuration one_real = make({0, 2}, {EdgeRef::real(1)}, Exit::child(0));
  CHECK_FALSE(is_boring(one_real, false));
  CHECK(weight(one_real) == 1);
  const Configuration parent_hop = make({0, 1}, {EdgeRef::virt(kParentSlot)}, Exit::parent());
  CHECK(is_boring(parent_hop, false));
  CHECK(weight(parent_hop) == 0);
  CHECK(mu(parent_hop, right) == 0);
  CHECK(rank(parent_hop, right, false) == 0);
  CHECK_THROWS_AS(is_boring(one_real, true), Error);
}

TEST_CASE("mu and rank: U-walks and I-walks on the ladder") {
  const ConeTypeSystem ladder = corpus("ladder");
  const ConeType& right = ladder.type(ladder.find_type("right"));
  // edges of "right": 0 is the rung 2-3, 1 is 0-2, 2 is 1-3
  const Configuration u_walk = make({0, 2, 3, 1}, {EdgeRef::real(1), EdgeRef::real(0), EdgeRef::real(2)}, Exit::parent());
  CHECK(mu(u_walk, right) == 1);
  CHECK(rank(u_walk, right, false) == 1);
  const Configuration i_walk = make({0, 2}, {EdgeRef::real(1)}, Exit::child(0));
  CHECK(mu(i_walk, right) == 0);
  CHECK(rank(i_walk, right, false) == 1);
  CHECK(rank(i_walk, ladder.root(), true) == 1);
  CHECK(mu(Configuration{}, right) == 0);
}

TEST_CASE("rank: zero exactly on boring configurations, and bounded by the adhesion size") {
  for (const auto& name : testsupport::corpus_systems()) {
    const ConeTypeSystem sys = corpus(name);
    for (TypeId t = 0; t < static_cast<TypeId>(sys.types.size()); ++t) {
      const ConeType& type = sys.type(t);
      const bool root = t == sys.root_type;
      const int k = static_cast<int>(type.parent_adhesion.size());
      for (const auto& c : enumerate_configurations(sys, t)) {
        const int r = rank(c, type, root);
        if (root) {
          CHECK(r == 1);
          continue;
        }
        CHECK((r == 0) == is_boring(c, false));
        if (r >= 1) CHECK(2 * r - 1 <= k);
      }
    }
  }
}

TEST_CASE("residual components: U/I classification agrees with mu and rank") {
  for (const auto& name : testsupport::corpus_systems()) {
    const ConeTypeSystem sys = corpus(name);
    for (TypeId t = 0; t < static_cast<TypeId>(sys.types.size()); ++t) {
      if (t == sys.root_type) continue;
      const ConeType& type = sys.type(t);
      for (const auto& c : enumerate_configurations(sys, t)) {
        const auto comps = residual_components(c, type, false);
        const auto pieces = residual_pieces(c);
        REQUIRE(comps.size() == pieces.size());
        int returning = 0, kept = 0, direct_mu = 0;
        for (std::size_t i = 0; i < comps.size(); ++i) {
          CHECK(comps[i].adhesion_vertices == adhesion_hits(pieces[i], type));
          if (adhesion_hits(pieces[i], type) >= 2) ++direct_mu;
          if (comps[i].kind == ComponentKind::Returning) ++returning;
          if (comps[i].kind != ComponentKind::Skipped) ++kept;
        }
        CHECK(returning == mu(c, type));
        CHECK(direct_mu == mu(c, type));
        CHECK(kept == rank(c, type, false));
      }
    }
  }
}

TEST_CASE("compatible: examples") {
  const ConeTypeSystem ladder = corpus("ladder");
  const TypeId root = ladder.root_type;
  const TypeId right = ladder.find_type("right");
  const int slot = 1;  // right child of the root, adhesion {2, 3}
  // root edges: 0 is 0-1, 1 is 2-3, 2 is 0-2, 3 is 1-3
  const Configuration avoiding = make({0, 1}, {EdgeRef::real(0)}, Exit::self());
  CHECK(compatible(ladder, root, slot, avoiding, right, Configuration{}));
  for (const auto& c : enumerate_configurations(ladder, right))
    if (!c.is_empty()) CHECK_FALSE(compatible(ladder, root, slot, avoiding, right, c));

  // the root crosses the adhesion through the slot's virtual edge
  const Configuration through = make({0, 2, 3, 1}, {EdgeRef::real(2), EdgeRef::virt(slot), EdgeRef::real(3)}, Exit::self());
  const Configuration child_virtual = make({0, 1}, {EdgeRef::virt(kParentSlot)}, Exit::parent());
  const Configuration child_detour = make({0, 2, 3, 1}, {EdgeRef::real(1), EdgeRef::real(0), EdgeRef::real(2)}, Exit::parent());
  CHECK_FALSE(compatible(ladder, root, slot, through, right, child_virtual));
  CHECK(compatible(ladder, root, slot, through, right, child_detour));

  // exit duality: a root exiting into the slot needs a child that does not exit upwards
  const Configuration into = make({0, 2}, {EdgeRef::real(2)}, Exit::child(slot));
  const Configuration child_stays = make({0, 2}, {EdgeRef::real(1)}, Exit::self());
  const Configuration child_up = make({0}, {}, Exit::parent());
  CHECK(compatible(ladder, root, slot, into, right, child_stays));
  CHECK_FALSE(compatible(ladder, root, slot, into, right, child_up));
}

TEST_CASE("boring_completion: examples") {
  const ConeTypeSystem ladder = corpus("ladder");
  const TypeId root = ladder.root_type;
  const Configuration avoiding = make({0, 1}, {EdgeRef::real(0)}, Exit::self());
  CHECK(boring_completion(ladder, root, 1, avoiding) == Configuration{});
  const Configuration touch = make({0, 2}, {EdgeRef::real(2)}, Exit::self());
  CHECK(boring_completion(ladder, root, 1, touch) == make({0}, {}, Exit::parent()));
  const Configuration both = make({0, 2, 3}, {EdgeRef::real(2), EdgeRef::real(1)}, Exit::self());
  CHECK(boring_completion(ladder, root, 1, both) == make({0, 1}, {EdgeRef::virt(kParentSlot)}, Exit::parent()));
  const Configuration into = make({0, 2}, {EdgeRef::real(2)}, Exit::child(1));
  CHECK_THROWS_AS(boring_completion(ladder, root, 1, into), Error);
}

TEST_CASE("boring_completion: the unique compatible boring child, exhaustively") {
  for (const auto& name : testsupport::corpus_systems()) {
    const ConeTypeSystem sys = corpus(name);
    for (TypeId pt = 0; pt < static_cast<TypeId>(sys.types.size()); ++pt) {
      const auto parents = enumerate_configurations(sys, pt);
      for (int slot = 0; slot < static_cast<int>(sys.type(pt).children.size()); ++slot) {
        const TypeId ct = sys.type(pt).children[static_cast<std::size_t>(slot)].child_type;
        const auto children = enumerate_configurations(sys, ct);
        for (const auto& p : parents) {
          if (p.exit.is_child(slot) || uses_slot(p, slot)) continue;
          std::vector<Configuration> boring;
          for (const auto& c : children)
            if (is_boring(c, false) && compatible(sys, pt, slot, p, ct, c)) boring.push_back(c);
          CAPTURE(name);
          REQUIRE(boring.size() == 1);
          CHECK(boring_completion(sys, pt, slot, p) == boring.front());
        }
      }
    }
  }
}

TEST_CASE("compatible: invariant under renaming the child's local vertices") {
  const ConeTypeSystem ladder = corpus("ladder");
  const TypeId right = ladder.find_type("right");
  const std::vector<int> perm{3, 1, 0, 2};  // old local id -> new local id
  ConeTypeSystem renamed = ladder;
  ConeType& r = renamed.types[static_cast<std::size_t>(right)];
  for (int& v : r.parent_adhesion) v = perm[static_cast<std::size_t>(v)];
  for (auto& e : r.edges) {
    e.u = perm[static_cast<std::size_t>(e.u)];
    e.v = perm[static_cast<std::size_t>(e.v)];
  }
  for (auto& c : r.children)
    for (int& v : c.embedding) v = perm[static_cast<std::size_t>(v)];
  auto rename = [&](Configuration c) {
    for (int& v : c.walk.vertices) v = perm[static_cast<std::size_t>(v)];
    return c;
  };

  const auto parents = enumerate_configurations(ladder, ladder.root_type);
  const auto children = enumerate_configurations(ladder, right);
  const auto renamed_children = enumerate_configurations(renamed, right);
  CHECK(children.size() == renamed_children.size());
  std::size_t pairs = 0;
  for (const auto& p : parents)
    for (const auto& c : children) {
      const bool a = compatible(ladder, ladder.root_type, 1, p, right, c);
      CHECK(a == compatible(renamed, renamed.root_type, 1, p, right, rename(c)));
      if (a) ++pairs;
    }
  CHECK(pairs > 0);
  // the child's own slot sees the renaming from the parent side
  for (const auto& p : children)
    for (const auto& c : children)
      CHECK(compatible(ladder, right, 0, p, right, c) == compatible(renamed, right, 0, rename(p), right, rename(c)));
}

TEST_CASE("configuration dump: one JSON object per line in canonical order") {
  const ConeTypeSystem ex = corpus("paper-example");
  const TypeId t = ex.find_type("prism_b");
  const auto cs = enumerate_configurations(ex, t);
  std::istringstream in(dump_configurations(ex, t, cs));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    auto doc = nlohmann::json::parse(line);
    CHECK(doc["ordinal"] == n);
    CHECK(doc["type"] == "prism_b");
    CHECK(doc["weight"] == weight(cs[n]));
    for (const char* extra : {"ordinal", "type", "weight", "boring", "rank"}) doc.erase(extra);
    CHECK(doc == configuration_to_json(cs[n]));
    ++n;
  }
  CHECK(n == cs.size());
}

TEST_CASE("configurations: cap raises a resource error") {
  Limits tiny;
  tiny.max_configs_per_type = 5;
  const ConeTypeSystem ex = corpus("paper-example");
  try {
    enumerate_configurations(ex, ex.find_type("prism_a"), tiny);
    FAIL("expected a resource error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
  }
}
