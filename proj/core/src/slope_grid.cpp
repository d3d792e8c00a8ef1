#include "revolv/slope_grid.hpp"

#include "revolv/error.hpp"

#include <algorithm>
#include <cmath>

namespace revolv {

std::vector<double> make_slope_grid(const SlopeGridSpec& spec) {
  if (spec.count < 2) throw DomainError("slope grid needs at least two points");
  if (spec.s_min < 0.0) throw DomainError("slope grid needs s_min >= 0");
  if (!(spec.s_max > spec.s_min)) throw DomainError("slope grid needs s_max > s_min");

  std::vector<double> grid;
  const bool with_zero = spec.s_min <= 0.0;
  if (with_zero) grid.push_back(0.0);

  const bool clustered = spec.cluster_half_width > 0.0 && spec.cluster_count > 0;
  if (clustered) {
    const int n = spec.cluster_count;
    for (int i = 0; i < n; ++i) {
      const double offset =
          n == 1 ? 0.0 : spec.cluster_half_width * (2.0 * i / (n - 1) - 1.0);
      grid.push_back(kRegimeSlope + offset);
    }
  }

  const int remaining = spec.count - static_cast<int>(grid.size());
  if (remaining < 1) throw DomainError("slope grid count too small for zero and cluster points");
  const double lo = with_zero ? spec.geometric_floor : spec.s_min;
  if (!(lo > 0.0) || !(spec.s_max > lo)) {
    throw DomainError("slope grid geometric range is empty");
  }
  const double ratio = remaining == 1 ? 1.0 : std::pow(spec.s_max / lo, 1.0 / (remaining - 1));
  for (int i = 0; i < remaining; ++i) {
    grid.push_back(i == remaining - 1 && remaining > 1 ? spec.s_max : lo * std::pow(ratio, i));
  }

  std::sort(grid.begin(), grid.end());
  return grid;
}

}  // namespace revolv
