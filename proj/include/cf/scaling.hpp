#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cf/saturation.hpp"

namespace cf {

struct ScalingRow {
  unsigned n = 0;
  std::uint64_t statements_generated = 0;
  std::uint64_t statements_confirmed = 0;
  double seconds = 0;
};

/// Saturates `f` on the input `1010...` of each length in `ns`.
std::vector<ScalingRow> scaling_probe(const Program& p, const std::string& f,
                                      const std::vector<unsigned>& ns,
                                      const SaturationOptions& options = {});

/// Least-squares slope of log(y) against log(x). Needs two distinct positive x.
double loglog_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace cf
