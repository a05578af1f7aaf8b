#pragma once

#include <vector>

namespace orfd {

/// Uniform grid 0 = x_0 < x_1 < ... < x_{N+1} = 1 with h = 1/(N+1).
class Grid {
 public:
  /// Accepts N >= 1; the scheme assemblers additionally require N >= 3.
  explicit Grid(int N);

  int N() const { return N_; }
  double h() const { return h_; }
  /// (N+1)^2 as an exact integer-valued double, used instead of 1/h^2.
  double inv_h2() const { return static_cast<double>(N_ + 1) * (N_ + 1); }
  double x(int i) const { return static_cast<double>(i) / (N_ + 1); }
  const std::vector<double>& nodes() const { return nodes_; }

  bool operator==(const Grid& other) const { return N_ == other.N_; }

 private:
  int N_;
  double h_;
  std::vector<double> nodes_;
};

/// Throws ValidationError when N < 3 (stencil width after ghost elimination).
void require_assembly_size(const Grid& grid);

}  // namespace orfd
