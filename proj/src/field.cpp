#include "stk/field.hpp"

#include <cmath>

namespace stk {

double FodField::mass() const {
  const int n = sphere.size();
  const double vol = std::pow(grid.spacing, 3);
  double m = 0.0;
  for (std::size_t v = 0; v < values.size(); ++v)
    m += values[v] * sphere.weights[v % n];
  return m * vol;
}

}  // namespace stk
