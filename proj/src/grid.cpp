#include "orfd/grid.hpp"

#include <string>

#include "orfd/errors.hpp"

namespace orfd {

Grid::Grid(int N) : N_(N), h_(0.0) {
  if (N < 1) throw ValidationError("N must be at least 1, got " + std::to_string(N));
  h_ = 1.0 / (N + 1);
  nodes_.resize(static_cast<std::size_t>(N) + 2);
  for (int i = 0; i <= N + 1; ++i) nodes_[static_cast<std::size_t>(i)] = x(i);
}

void require_assembly_size(const Grid& grid) {
  if (grid.N() < 3) {
    throw ValidationError("N must be at least 3 for scheme assembly, got " +
                          std::to_string(grid.N()));
  }
}

}  // namespace orfd
