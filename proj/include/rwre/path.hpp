#ifndef RWRE_PATH_HPP
#define RWRE_PATH_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace rwre {

// A grid-sampled real-valued landscape: either the potential of an
// environment (step = 1) or a sampled Brownian path. values[0] is always 0.
// Grid index k corresponds to real position k * step.
struct Path {
  double step = 1.0;
  std::vector<double> values;
  std::optional<double> sigma2;  // diffusion constant when Brownian-sampled

  std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
  double position(std::int64_t idx) const { return static_cast<double>(idx) * step; }
};

}  // namespace rwre

#endif  // RWRE_PATH_HPP
