#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "likemind/dataset.hpp"

namespace likemind {

enum class UtilityKind : std::uint8_t {
  popularity,
  prestige,
  recency,
  coverage,
  surprisingness,
  category,
  diversity,
  size
};

inline constexpr std::size_t kUtilityCount = 8;

inline constexpr std::array<UtilityKind, kUtilityCount> kUtilityKinds = {
    UtilityKind::popularity,     UtilityKind::prestige, UtilityKind::recency,   UtilityKind::coverage,
    UtilityKind::surprisingness, UtilityKind::category, UtilityKind::diversity, UtilityKind::size};

std::string_view to_string(UtilityKind k) noexcept;
UtilityKind parse_utility_kind(std::string_view name);

using UtilityValues = std::array<double, kUtilityCount>;

struct UtilityEnv {
  DatasetStats stats;
  std::vector<CategoryId> portfolio_categories;   // sorted, unique
  std::vector<CategoryId> categories_of_interest;  // sorted, unique
  Date now{};
};

using PoiSet = std::span<const Poi* const>;

/// |A ∩ B| / |A ∪ B| over sorted unique ranges; two empty sets are identical.
template <class T>
double jaccard_similarity(std::span<const T> a, std::span<const T> b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++inter;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

template <class T>
double jaccard_distance(std::span<const T> a, std::span<const T> b) {
  return 1.0 - jaccard_similarity(a, b);
}

inline double jaccard_similarity(const std::vector<CategoryId>& a, const std::vector<CategoryId>& b) {
  return jaccard_similarity<CategoryId>(a, b);
}
inline double jaccard_distance(const std::vector<CategoryId>& a, const std::vector<CategoryId>& b) {
  return jaccard_distance<CategoryId>(a, b);
}

/// Union of the POIs' category sets, sorted.
std::vector<CategoryId> categories_of(PoiSet pois);

/// Planar area of the convex hull after an equirectangular projection
/// centred on the points' mean latitude. Zero for fewer than three points
/// or collinear input.
double convex_hull_area(std::span<const GeoPoint> points);

double evaluate(UtilityKind kind, PoiSet pois, const UtilityEnv& env);
UtilityValues evaluate_all(PoiSet pois, const UtilityEnv& env);

}  // namespace likemind
