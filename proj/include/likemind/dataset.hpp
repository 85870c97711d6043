#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "likemind/items.hpp"
#include "likemind/types.hpp"

namespace likemind {

inline constexpr std::string_view kUncategorized = "uncategorized";

struct Poi {
  std::string id;
  GeoPoint loc;
  Date inserted{};
  std::uint64_t total_checkins = 0;
  double radius_m = 0.0;
  std::vector<CategoryId> categories;  // sorted, unique, never empty
  double rating = 0.0;                 // imputed when the source had none
  bool rating_imputed = false;
};

struct Checkin {
  VisitorIndex visitor = 0;
  PoiIndex poi = 0;
  Timestamp ts = 0;
  friend bool operator==(const Checkin&, const Checkin&) = default;
};

struct Visitor {
  std::string id;
  std::array<double, kDemogCount> demogs{};
  std::array<Bucket, kDemogCount> buckets{};
};

struct DatasetStats {
  std::uint64_t max_poi_checkins = 0;
  double max_radius_m = 0.0;
  Date oldest_insertion_date{};
  double mean_rating = 0.0;
  double mean_latitude = 0.0;
  double city_area_m2 = 0.0;
  std::vector<CategoryId> category_universe;
};

// Upper bounds (inclusive) of the very-few, few and some buckets, per
// attribute. Anything above the third bound is "many".
struct BucketThresholds {
  std::array<std::array<double, 3>, kDemogCount> upper{};

  static BucketThresholds gowalla();
  friend bool operator==(const BucketThresholds&, const BucketThresholds&) = default;
};

Bucket discretize(const BucketThresholds& thresholds, DemogAttribute attribute, double raw_value);
DemographicBucket discretize(DemogAttribute attribute, double raw_value);
DemographicBucket discretize(std::string_view attribute, double raw_value);

TimeCategory time_category(Timestamp ts) noexcept;
Date date_of(Timestamp ts) noexcept;

// Parses "YYYY-MM-DD", "YYYY-MM-DDTHH:MM[:SS[.fff]]" with an optional "Z" or
// "+hh:mm"/"-hh:mm" suffix. Explicit offsets are normalized to UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text) noexcept;
std::string format_timestamp(Timestamp ts);
std::string format_date(Date d);

struct LoadConfig {
  bool strict = false;
  int utc_offset_minutes = 0;
  bool refit_buckets = false;
};

struct DatasetSources {
  std::istream* pois = nullptr;
  std::istream* visitors = nullptr;
  std::istream* checkins = nullptr;
};

class Dataset {
 public:
  static Dataset load(const DatasetSources& sources, const LoadConfig& config = {});
  static Dataset load_files(const std::string& pois_path, const std::string& visitors_path,
                            const std::string& checkins_path, const LoadConfig& config = {});

  void save(std::ostream& out) const;
  static Dataset restore(std::istream& in);
  void save_file(const std::string& path) const;
  static Dataset restore_file(const std::string& path);

  std::span<const Poi> pois() const noexcept { return pois_; }
  std::span<const Visitor> visitors() const noexcept { return visitors_; }
  const Poi& poi(PoiIndex p) const { return pois_.at(p); }
  const Visitor& visitor(VisitorIndex v) const { return visitors_.at(v); }

  // All check-ins, ordered by (poi, ts, visitor).
  std::span<const Checkin> checkins() const noexcept { return checkins_; }
  std::span<const Checkin> checkins_at(PoiIndex p) const;
  // Positions into checkins() of one visitor's check-ins, ordered by ts.
  std::span<const std::uint32_t> checkins_of_visitor(VisitorIndex v) const;

  std::optional<PoiIndex> find_poi(std::string_view id) const;
  std::optional<VisitorIndex> find_visitor(std::string_view id) const;
  std::optional<CategoryId> find_category(std::string_view name) const;
  const std::string& category_name(CategoryId c) const { return categories_.at(c); }
  std::size_t category_count() const noexcept { return categories_.size(); }
  CategoryId uncategorized() const;

  const DatasetStats& stats() const noexcept { return stats_; }
  const BucketThresholds& thresholds() const noexcept { return thresholds_; }
  const ItemDictionary& items() const noexcept { return items_; }
  int utc_offset_minutes() const noexcept { return utc_offset_minutes_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  // Pieces assembled by the loader; exposed for tests that build a dataset
  // programmatically. Sorts POIs by id and recomputes every derived table.
  struct Parts {
    std::vector<Poi> pois;
    std::vector<Visitor> visitors;
    std::vector<Checkin> checkins;
    std::vector<std::string> categories;
    BucketThresholds thresholds = BucketThresholds::gowalla();
    int utc_offset_minutes = 0;
  };
  static Dataset from_parts(Parts parts);

 private:
  void finalize();

  std::vector<Poi> pois_;
  std::vector<Visitor> visitors_;
  std::vector<Checkin> checkins_;
  std::vector<std::string> categories_;
  BucketThresholds thresholds_ = BucketThresholds::gowalla();
  int utc_offset_minutes_ = 0;
  std::vector<std::string> warnings_;

  // derived
  std::vector<std::uint32_t> poi_offsets_;
  std::vector<std::uint32_t> visitor_checkins_;
  std::vector<std::uint32_t> visitor_offsets_;
  std::unordered_map<std::string, PoiIndex> poi_by_id_;
  std::unordered_map<std::string, VisitorIndex> visitor_by_id_;
  std::unordered_map<std::string, CategoryId> category_by_name_;
  DatasetStats stats_;
  ItemDictionary items_;
};

// Equal-frequency quartile cut points over the visitors' raw values.
BucketThresholds refit_thresholds(std::span<const Visitor> visitors);

}  // namespace likemind
