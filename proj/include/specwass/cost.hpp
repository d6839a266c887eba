#pragma once

#include <cstddef>

#include "specwass/matrix.hpp"
#include "specwass/space.hpp"

namespace specwass {

// Nonnegative transport cost. Unlike a metric it need not vanish on the
// diagonal; the two-sheet jump costs c_I live here. The `metric` flag records
// provenance from a validated metric space, which lets the dual solver skip
// the shortest-path closure.
class CostMatrix {
 public:
  CostMatrix(Matrix cost, bool vanishing_diagonal);

  static CostMatrix from_metric_space(const FiniteMetricSpace& space);

  std::size_t size() const { return cost_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return cost_(i, j); }
  const Matrix& matrix() const { return cost_; }
  bool vanishing_diagonal() const { return vanishing_diagonal_; }
  bool metric() const { return metric_; }

 private:
  Matrix cost_;
  bool vanishing_diagonal_;
  bool metric_ = false;
};

}  // namespace specwass
