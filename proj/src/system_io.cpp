#include "sawlab/system.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "sawlab/error.hpp"

namespace sawlab {

using nlohmann::json;

int ConeType::adhesion_index(LocalVertex v) const {
  for (std::size_t i = 0; i < parent_adhesion.size(); ++i)
    if (parent_adhesion[i] == v) return static_cast<int>(i);
  return -1;
}

TypeId ConeTypeSystem::find_type(std::string_view name) const {
  for (std::size_t i = 0; i < types.size(); ++i)
    if (types[i].name == name) return static_cast<TypeId>(i);
  return -1;
}

const ConeType& ConeTypeSystem::child_type(TypeId parent, int slot) const {
  return type(type(parent).children.at(static_cast<std::size_t>(slot)).child_type);
}

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::set<std::string>& required,
                const std::string& where) {
  require(obj.is_object(), where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    require(allowed.count(key) > 0, where + ": unknown field \"" + key + "\"");
  for (const auto& key : required) require(obj.contains(key), where + ": missing field \"" + key + "\"");
}

int as_int(const json& v, const std::string& where) {
  require(v.is_number_integer(), where + ": expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& where) {
  require(v.is_string(), where + ": expected a string");
  return v.get<std::string>();
}

std::vector<int> as_int_list(const json& v, const std::string& where) {
  require(v.is_array(), where + ": expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

ConeTypeSystem parse_system(const json& doc) {
  check_keys(doc, {"version", "types", "root"}, {"version", "types", "root"}, "system");
  require(as_int(doc["version"], "version") == 1, "system: unsupported version");
  require(doc["types"].is_array(), "types: expected an array");

  ConeTypeSystem sys;
  for (std::size_t t = 0; t < doc["types"].size(); ++t) {
    const json& jt = doc["types"][t];
    const std::string where = "types[" + std::to_string(t) + "]";
    check_keys(jt, {"name", "part_size", "parent_adhesion", "edges", "children"},
               {"name", "part_size", "parent_adhesion", "edges", "children"}, where);
    ConeType ct;
    ct.name = as_string(jt["name"], where + ".name");
    ct.part_size = as_int(jt["part_size"], where + ".part_size");
    ct.parent_adhesion = as_int_list(jt["parent_adhesion"], where + ".parent_adhesion");
    require(jt["edges"].is_array(), where + ".edges: expected an array");
    for (std::size_t e = 0; e < jt["edges"].size(); ++e) {
      const json& je = jt["edges"][e];
      const std::string ew = where + ".edges[" + std::to_string(e) + "]";
      check_keys(je, {"u", "v", "label_uv", "label_vu"}, {"u", "v", "label_uv", "label_vu"}, ew);
      ct.edges.push_back(EdgeSpec{as_int(je["u"], ew + ".u"), as_int(je["v"], ew + ".v"),
                                  as_string(je["label_uv"], ew + ".label_uv"),
                                  as_string(je["label_vu"], ew + ".label_vu")});
    }
    require(jt["children"].is_array(), where + ".children: expected an array");
    for (std::size_t c = 0; c < jt["children"].size(); ++c) {
      const json& jc = jt["children"][c];
      const std::string cw = where + ".children[" + std::to_string(c) + "]";
      check_keys(jc, {"type", "embedding"}, {"type", "embedding"}, cw);
      ChildSlot slot;
      slot.child_name = as_string(jc["type"], cw + ".type");
      slot.embedding = as_int_list(jc["embedding"], cw + ".embedding");
      ct.children.push_back(std::move(slot));
    }
    sys.types.push_back(std::move(ct));
  }
  for (auto& ct : sys.types)
    for (auto& slot : ct.children) slot.child_type = sys.find_type(slot.child_name);

  check_keys(doc["root"], {"type", "vertex"}, {"type", "vertex"}, "root");
  sys.root_name = as_string(doc["root"]["type"], "root.type");
  sys.root_type = sys.find_type(sys.root_name);
  sys.root_vertex = as_int(doc["root"]["vertex"], "root.vertex");
  return sys;
}

ConeTypeSystem parse_system_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Invalid, std::string("system: JSON parse error: ") + e.what());
  }
  return parse_system(doc);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConeTypeSystem load_system(const std::filesystem::path& path) { return parse_system_text(read_text_file(path)); }

json system_to_json(const ConeTypeSystem& system) {
  json types = json::array();
  for (const auto& ct : system.types) {
    json edges = json::array();
    for (const auto& e : ct.edges)
      edges.push_back({{"u", e.u}, {"v", e.v}, {"label_uv", e.label_uv}, {"label_vu", e.label_vu}});
    json children = json::array();
    for (const auto& c : ct.children) children.push_back({{"type", c.child_name}, {"embedding", c.embedding}});
    types.push_back({{"name", ct.name},
                     {"part_size", ct.part_size},
                     {"parent_adhesion", ct.parent_adhesion},
                     {"edges", edges},
                     {"children", children}});
  }
  return {{"version", 1}, {"types", types}, {"root", {{"type", system.root_name}, {"vertex", system.root_vertex}}}};
}

}  // namespace sawlab
