#include "sawlab/limits.hpp"

#include <cstdlib>
#include <string>

#include "sawlab/error.hpp"

namespace sawlab {

Limits Limits::from_environment() {
  Limits limits;
  if (const char* raw = std::getenv("SAWLAB_MAX_CELLS"); raw != nullptr && *raw != '\0') {
    std::size_t cells = 0;
    try {
      cells = std::stoull(raw);
    } catch (const std::exception&) {
      fail(ErrorKind::Invalid, std::string("SAWLAB_MAX_CELLS is not a number: ") + raw);
    }
    limits.max_vertices = cells;
    limits.max_items = cells;
  }
  return limits;
}

}  // namespace sawlab
