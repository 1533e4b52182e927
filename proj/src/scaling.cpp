#include <chrono>
#include <cmath>

#include "cf/error.hpp"
#include "cf/scaling.hpp"
#include "cf/syntax.hpp"

namespace cf {

std::vector<ScalingRow> scaling_probe(const Program& p, const std::string& f,
                                      const std::vector<unsigned>& ns,
                                      const SaturationOptions& options) {
  std::vector<ScalingRow> rows;
  for (unsigned n : ns) {
    std::string bits;
    for (unsigned i = 0; i < n; ++i) bits += i % 2 == 0 ? '1' : '0';
    Term input = bits_to_list(p.symbols(), bits);
    auto t0 = std::chrono::steady_clock::now();
    SaturationResult r = saturate(p, f, {input}, options);
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    rows.push_back({n, r.stats.statements_generated,
                    r.stats.statements_confirmed, dt.count()});
  }
  return rows;
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    if (x <= 0 || y <= 0) throw Error("log-log fit needs positive values");
    double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double n = static_cast<double>(points.size());
  double denom = n * sxx - sx * sx;
  if (points.size() < 2 || denom == 0) {
    throw Error("log-log fit needs two distinct x values");
  }
  return (n * sxy - sx * sy) / denom;
}

}  // namespace cf
