#include "specdens/convex_minorant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specdens {

ConvexMinorant ConvexMinorant::lower_hull(
    std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("lower_hull needs at least 2 samples");
  for (auto& [y, v] : samples) {
    if (!std::isfinite(y) || !std::isfinite(v))
      throw std::invalid_argument("hull samples must be finite");
    if (y < 0.0 || v < 0.0)
      throw std::invalid_argument("hull samples must be nonnegative");
  }
  samples.emplace_back(0.0, 0.0);  // anchor
  std::sort(samples.begin(), samples.end());
  // for duplicate y keep the lowest value
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : samples) {
    if (!pts.empty() && pts.back().first == p.first) continue;  // sorted: min first
    pts.push_back(p);
  }
  if (pts.size() < 2)
    throw std::invalid_argument("hull needs at least 2 distinct y values");

  // monotone-chain lower hull; collinear middle points are dropped so the
  // breakpoint set is minimal and re-hulling is the identity
  ConvexMinorant m;
  auto& hull = m.pts_;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      double cross = (b.first - a.first) * (p.second - a.second) -
                     (b.second - a.second) * (p.first - a.first);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  return m;
}

double ConvexMinorant::operator()(double y) const {
  if (!(y >= 0.0)) throw std::invalid_argument("minorant requires y >= 0");
  if (pts_.size() < 2) throw std::logic_error("uninitialized minorant");
  if (y >= pts_.back().first) {
    const auto& a = pts_[pts_.size() - 2];
    const auto& b = pts_.back();
    double slope = (b.second - a.second) / (b.first - a.first);
    return b.second + slope * (y - b.first);
  }
  auto it = std::upper_bound(
      pts_.begin(), pts_.end(), std::make_pair(y, kPlusInf));
  const auto& b = *it;
  const auto& a = *(it - 1);
  double t = (y - a.first) / (b.first - a.first);
  return a.second + t * (b.second - a.second);
}

bool ConvexMinorant::convex() const {
  double prev = -kPlusInf;
  for (std::size_t i = 1; i < pts_.size(); ++i) {
    double slope = (pts_[i].second - pts_[i - 1].second) /
                   (pts_[i].first - pts_[i - 1].first);
    if (slope < prev) return false;
    prev = slope;
  }
  return true;
}

double nash_target(const StepFunction& f, double y) {
  if (!(y >= 0.0)) throw std::invalid_argument("target requires y >= 0");
  if (y == 0.0) return 0.0;
  double finv = f.right_inverse(y);
  if (is_sentinel(finv)) return kPlusInf;
  return y * finv;
}

ConvexMinorant nash_minorant(const StepFunction& f) {
  if (f.empty())
    throw std::invalid_argument("cannot build a minorant of an empty density");
  // Left-limit extreme points of y * Finv(y): on [c_{i-1}, c_i) the target is
  // l_i * y, so its infimum envelope is pinned at (c_i, l_i * c_i). Every
  // segment of the target dominates the hull chord between consecutive pinned
  // points, hence the hull minorizes the target on all of [0, total mass).
  std::vector<std::pair<double, double>> samples;
  samples.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    samples.emplace_back(f.cumulative(i), f.location(i) * f.cumulative(i));
  if (samples.size() == 1)
    samples.emplace_back(0.5 * samples[0].first, 0.5 * samples[0].second);
  return ConvexMinorant::lower_hull(std::move(samples));
}

double minorant_target_ratio_inf(const StepFunction& f,
                                 const ConvexMinorant& phi,
                                 std::size_t grid_size) {
  if (f.empty()) throw std::invalid_argument("empty density");
  double mass = f.total_mass();
  std::vector<double> ys;
  ys.reserve(grid_size + f.size());
  // log-spaced interior grid on (0, mass)
  double lo = std::log(mass) - 18.0;  // spans ~8 decades below the mass
  double hi = std::log(mass);
  for (std::size_t i = 0; i < grid_size; ++i) {
    double t = (static_cast<double>(i) + 0.5) / static_cast<double>(grid_size);
    ys.push_back(std::exp(lo + t * (hi - lo)));
  }
  // jump locations of the target: cumulative masses below the top, where the
  // per-interval infima of phi/target are attained
  for (std::size_t i = 0; i + 1 < f.size(); ++i) ys.push_back(f.cumulative(i));
  double inf = kPlusInf;
  for (double y : ys) {
    if (!(y > 0.0) || y >= mass) continue;
    double target = nash_target(f, y);
    if (!(target > 0.0) || is_sentinel(target)) continue;
    inf = std::min(inf, phi(y) / target);
  }
  if (is_sentinel(inf))
    throw std::runtime_error("no admissible grid point for ratio infimum");
  return inf;
}

}  // namespace specdens
