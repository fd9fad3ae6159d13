#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace sawlab {

using LocalVertex = int;
using TypeId = int;

struct EdgeSpec {
  LocalVertex u = 0;
  LocalVertex v = 0;
  std::string label_uv;
  std::string label_vu;

  const std::string& label_from(LocalVertex from) const { return from == u ? label_uv : label_vu; }
  LocalVertex other(LocalVertex x) const { return x == u ? v : u; }
};

struct ChildSlot {
  TypeId child_type = -1;  // -1 when the name did not resolve
  std::string child_name;
  std::vector<LocalVertex> embedding;
};

struct ConeType {
  std::string name;
  int part_size = 0;
  std::vector<LocalVertex> parent_adhesion;
  std::vector<EdgeSpec> edges;
  std::vector<ChildSlot> children;

  // Position of v in parent_adhesion, or -1.
  int adhesion_index(LocalVertex v) const;
};

struct ConeTypeSystem {
  std::vector<ConeType> types;
  TypeId root_type = -1;
  std::string root_name;
  LocalVertex root_vertex = 0;

  TypeId find_type(std::string_view name) const;
  const ConeType& type(TypeId id) const { return types.at(static_cast<std::size_t>(id)); }
  const ConeType& root() const { return type(root_type); }
  const ConeType& child_type(TypeId parent, int slot) const;
};

// Structural parse only; semantic checks live in validate_system.
ConeTypeSystem parse_system(const nlohmann::json& doc);
ConeTypeSystem parse_system_text(std::string_view text);
ConeTypeSystem load_system(const std::filesystem::path& path);
nlohmann::json system_to_json(const ConeTypeSystem& system);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace sawlab
