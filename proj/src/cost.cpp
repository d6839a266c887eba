#include "specwass/cost.hpp"

#include <string>

#include "specwass/errors.hpp"

namespace specwass {

CostMatrix::CostMatrix(Matrix cost, bool vanishing_diagonal)
    : cost_(std::move(cost)), vanishing_diagonal_(vanishing_diagonal) {
  if (!cost_.square()) throw ShapeError("CostMatrix: matrix must be square");
  const std::size_t n = cost_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (cost_(i, j) < 0.0)
        throw ParamError("CostMatrix: negative cost at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
    }
    if (vanishing_diagonal_ && cost_(i, i) != 0.0)
      throw ParamError("CostMatrix: vanishing_diagonal set but cost[" + std::to_string(i) +
                       "][" + std::to_string(i) + "] != 0");
  }
}

CostMatrix CostMatrix::from_metric_space(const FiniteMetricSpace& space) {
  CostMatrix c(space.matrix(), /*vanishing_diagonal=*/true);
  c.metric_ = true;
  return c;
}

}  // namespace specwass
