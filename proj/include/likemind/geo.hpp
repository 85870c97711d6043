#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "likemind/dataset.hpp"

namespace likemind {

/// Great-circle (haversine) distance in meters.
double distance(const GeoPoint& a, const GeoPoint& b) noexcept;

/// The user's situation at request time.
struct Context {
  GeoPoint loc;
  TimeCategory time;
  Timestamp wall_time = 0;

  static Context at(GeoPoint loc, Timestamp wall_time);
};

/// Uniform latitude/longitude grid over a dataset's POIs.
///
/// Cells are square in degrees. A radius query visits only the cells that
/// intersect the query's bounding box on the sphere and then filters by exact
/// haversine distance, so results equal a linear scan.
class GridIndex {
 public:
  explicit GridIndex(const Dataset& dataset, double cell_size_m = 500.0);

  /// POIs with distance(p.loc, center) <= r, ordered by POI id.
  std::vector<PoiIndex> query(const GeoPoint& center, double r) const;

  const Dataset& dataset() const noexcept { return *dataset_; }
  double cell_size_deg() const noexcept { return cell_deg_; }

 private:
  std::uint64_t key(std::int64_t row, std::int64_t col) const noexcept;

  const Dataset* dataset_;
  double cell_deg_;
  std::int64_t rows_;
  std::int64_t cols_;
  std::unordered_map<std::uint64_t, std::vector<PoiIndex>> cells_;
};

std::vector<PoiIndex> nearby_pois(const GridIndex& index, const GeoPoint& center, double r);

struct CheckinFilter {
  Hourly hourly = Hourly::morning;
  std::optional<Weekly> weekly;          // also match the weekly bucket when set
  std::span<const VisitorIndex> masked;  // sorted; their check-ins are dropped
};

/// Check-ins at the given POIs whose local time falls in the requested bucket.
std::vector<Checkin> checkins_of(const Dataset& dataset, std::span<const PoiIndex> pois, const CheckinFilter& filter);
std::vector<Checkin> checkins_of(const Dataset& dataset, std::span<const PoiIndex> pois, Hourly hourly);

}  // namespace likemind
