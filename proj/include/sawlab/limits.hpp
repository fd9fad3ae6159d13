#pragma once

#include <cstddef>
#include <cstdint>

namespace sawlab {

// Hard caps. Exceeding any of them raises ErrorKind::ResourceLimit
// (or NonStabilization for the iteration caps) instead of truncating.
struct Limits {
  std::size_t max_vertices = 4'000'000;          // glued vertices per unfolding
  std::size_t max_configs_per_type = 1'000'000;
  int max_ball_depth = 512;
  int stable_increments = 2;
  std::size_t max_iterations = 100'000;          // Kleene sweeps
  std::size_t max_items = 40'000'000;            // MCFG terms / span items
  std::size_t max_assignment_depth = 4096;       // lazy tree instantiation

  // Reads SAWLAB_MAX_CELLS, which bounds both vertex and item tables.
  static Limits from_environment();
};

}  // namespace sawlab
