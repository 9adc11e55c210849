#include <algorithm>
#include <functional>

#include "srot/baselines.hpp"
#include "srot/error.hpp"

namespace srot {

Vector project_scaled_simplex(const Vector& v, double mass) {
  if (!(mass > 0.0)) throw ConfigError("project_scaled_simplex: mass must be positive");
  const Index m = v.size();
  if (m == 0) throw ConfigError("project_scaled_simplex: empty vector");
  std::vector<double> sorted(v.data(), v.data() + m);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // theta = (sum of the rho largest entries - mass) / rho for the largest rho
  // keeping the rho-th entry above the threshold.
  double running = 0.0;
  double theta = 0.0;
  for (Index k = 0; k < m; ++k) {
    running += sorted[static_cast<std::size_t>(k)];
    const double candidate = (running - mass) / static_cast<double>(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

}  // namespace srot
