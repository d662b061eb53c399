#include "specdens/asymptotic_fit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace specdens {

AsymptoticFit asymptotic_fit(const StepFunction& f, double lo, double hi,
                             const std::vector<int>& k_candidates) {
  if (!(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("fit window must satisfy 0 < lo < hi");
  if (k_candidates.empty())
    throw std::invalid_argument("need at least one k candidate");
  auto idx = f.indices_in(lo, hi);
  if (idx.size() < 8)
    throw std::invalid_argument("need >= 8 atoms inside the fit window");
  bool has_log_term = false;
  for (int k : k_candidates) has_log_term |= (k != 0);
  if (has_log_term && hi >= 1.0)
    throw std::invalid_argument(
        "log-power candidates require a window inside (0,1)");

  std::vector<double> x, logy, loglog;
  for (auto i : idx) {
    double l = f.location(i);
    double v = f.cumulative(i);
    x.push_back(std::log(l));
    logy.push_back(std::log(v));
    loglog.push_back(has_log_term ? std::log(std::fabs(std::log(l))) : 0.0);
  }
  const auto n = static_cast<double>(x.size());

  AsymptoticFit best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int k : k_candidates) {
    // 2-parameter normal equations for z = logy - k*loglog against (1, x)
    double sx = 0, sz = 0, sxx = 0, sxz = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double z = logy[i] - k * loglog[i];
      sx += x[i];
      sz += z;
      sxx += x[i] * x[i];
      sxz += x[i] * z;
    }
    double det = n * sxx - sx * sx;
    if (det <= 0.0) continue;  // degenerate window (all atoms equal)
    double alpha = (n * sxz - sx * sz) / det;
    double logc = (sz * sxx - sx * sxz) / det;
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double r = logy[i] - k * loglog[i] - logc - alpha * x[i];
      rss += r * r;
    }
    double rms = std::sqrt(rss / n);
    if (rms < best.residual) {
      best.alpha = alpha;
      best.c = std::exp(logc);
      best.k = k;
      best.residual = rms;
    }
  }
  if (!std::isfinite(best.residual))
    throw std::invalid_argument("fit window is degenerate");
  best.window_lo = lo;
  best.window_hi = hi;
  best.points = idx.size();
  return best;
}

}  // namespace specdens
