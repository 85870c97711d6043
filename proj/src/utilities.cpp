#include "likemind/utilities.hpp"

#include <cmath>
#include <numeric>

namespace likemind {

namespace {

constexpr double kDeg = 3.14159265358979323846 / 180.0;

struct Vec2 {
  double x, y;
  friend bool operator<(const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

std::string_view to_string(UtilityKind k) noexcept {
  switch (k) {
    case UtilityKind::popularity: return "popularity";
    case UtilityKind::prestige: return "prestige";
    case UtilityKind::recency: return "recency";
    case UtilityKind::coverage: return "coverage";
    case UtilityKind::surprisingness: return "surprisingness";
    case UtilityKind::category: return "category";
    case UtilityKind::diversity: return "diversity";
    case UtilityKind::size: return "size";
  }
  return "?";
}

UtilityKind parse_utility_kind(std::string_view name) {
  for (auto k : kUtilityKinds)
    if (to_string(k) == name) return k;
  throw ArgumentError("unknown utility: " + std::string(name));
}

std::vector<CategoryId> categories_of(PoiSet pois) {
  std::vector<CategoryId> out;
  for (const Poi* p : pois) out.insert(out.end(), p->categories.begin(), p->categories.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double convex_hull_area(std::span<const GeoPoint> points) {
  if (points.size() < 3) return 0.0;
  double lat0 = 0.0;
  for (const auto& p : points) lat0 += p.lat;
  lat0 /= static_cast<double>(points.size());
  const double kx = kEarthRadiusM * kDeg * std::cos(lat0 * kDeg);
  const double ky = kEarthRadiusM * kDeg;

  std::vector<Vec2> pts;
  pts.reserve(points.size());
  const GeoPoint o = points.front();
  for (const auto& p : points) pts.push_back({(p.lon - o.lon) * kx, (p.lat - o.lat) * ky});
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) return 0.0;

  // Andrew's monotone chain.
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return 0.0;

  double twice = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) / 2.0;
}

double evaluate(UtilityKind kind, PoiSet pois, const UtilityEnv& env) {
  if (pois.empty()) return 0.0;
  const double n = static_cast<double>(pois.size());
  switch (kind) {
    case UtilityKind::popularity: {
      if (env.stats.max_poi_checkins == 0) return 0.0;
      double sum = 0.0;
      for (const Poi* p : pois) sum += static_cast<double>(p->total_checkins);
      return clamp01(sum / n / static_cast<double>(env.stats.max_poi_checkins));
    }
    case UtilityKind::prestige: {
      double sum = 0.0;
      for (const Poi* p : pois) sum += p->rating;
      return clamp01(sum / n / 5.0);
    }
    case UtilityKind::recency: {
      double sum = 0.0;
      for (const Poi* p : pois) sum += static_cast<double>(p->inserted.time_since_epoch().count());
      const double mean_day = sum / n;
      const double years = std::max(0.0, (static_cast<double>(env.now.time_since_epoch().count()) - mean_day) / 365.0);
      return 1.0 / (1.0 + years);
    }
    case UtilityKind::coverage: {
      if (pois.size() < 3 || !(env.stats.city_area_m2 > 0)) return 0.0;
      std::vector<GeoPoint> pts;
      pts.reserve(pois.size());
      for (const Poi* p : pois) pts.push_back(p->loc);
      return clamp01(convex_hull_area(pts) / env.stats.city_area_m2);
    }
    case UtilityKind::surprisingness: {
      if (env.portfolio_categories.empty()) return 1.0;
      return jaccard_distance(categories_of(pois), env.portfolio_categories);
    }
    case UtilityKind::category:
      return jaccard_similarity(env.categories_of_interest, categories_of(pois));
    case UtilityKind::diversity: {
      if (pois.size() < 2) return 0.0;
      double sum = 0.0;
      std::size_t pairs = 0;
      for (std::size_t i = 0; i < pois.size(); ++i) {
        for (std::size_t j = i + 1; j < pois.size(); ++j) {
          sum += jaccard_distance(pois[i]->categories, pois[j]->categories);
          ++pairs;
        }
      }
      return sum / static_cast<double>(pairs);
    }
    case UtilityKind::size: {
      if (!(env.stats.max_radius_m > 0)) return 0.0;
      double sum = 0.0;
      for (const Poi* p : pois) sum += p->radius_m;
      return clamp01(sum / n / env.stats.max_radius_m);
    }
  }
  return 0.0;
}

UtilityValues evaluate_all(PoiSet pois, const UtilityEnv& env) {
  UtilityValues v{};
  for (std::size_t i = 0; i < kUtilityCount; ++i) v[i] = evaluate(kUtilityKinds[i], pois, env);
  return v;
}

}  // namespace likemind
