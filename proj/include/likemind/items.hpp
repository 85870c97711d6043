#pragma once

#include "likemind/types.hpp"

namespace likemind {

enum class ItemKind : std::uint8_t { demographic, poi, category, category_hourly, category_weekly };

struct ItemPayload {
  ItemKind kind = ItemKind::demographic;
  DemographicBucket demog{};
  PoiIndex poi = 0;
  CategoryId category = 0;
  Hourly hourly = Hourly::morning;
  Weekly weekly = Weekly::weekday;
};

// Dataset-scoped bijection between transaction items and integer ids.
//
// Ids are laid out in contiguous blocks so encoding and decoding are pure
// arithmetic:
//   [0, 20)                      demographic (attribute, bucket)
//   [20, 20+P)                   POI
//   next C                       category
//   next 4*C                     (category, hourly)
//   next 2*C                     (category, weekly)
// This ordering also makes the lexicographic order of itemsets follow the
// payload kinds, which keeps miner output stable across runs.
class ItemDictionary {
 public:
  ItemDictionary() = default;
  ItemDictionary(std::size_t poi_count, std::size_t category_count)
      : poi_count_(poi_count), category_count_(category_count) {}

  std::size_t size() const noexcept {
    return kDemogCount * kBucketCount + poi_count_ + category_count_ * (1 + kHourlyCount + kWeeklyCount);
  }
  std::size_t poi_count() const noexcept { return poi_count_; }
  std::size_t category_count() const noexcept { return category_count_; }

  ItemId demographic(DemographicBucket b) const noexcept {
    return static_cast<ItemId>(static_cast<std::size_t>(b.attribute) * kBucketCount +
                               static_cast<std::size_t>(b.bucket));
  }
  ItemId poi(PoiIndex p) const noexcept { return static_cast<ItemId>(poi_base() + p); }
  ItemId category(CategoryId c) const noexcept { return static_cast<ItemId>(category_base() + c); }
  ItemId category_hourly(CategoryId c, Hourly h) const noexcept {
    return static_cast<ItemId>(hourly_base() + c * kHourlyCount + static_cast<std::size_t>(h));
  }
  ItemId category_weekly(CategoryId c, Weekly w) const noexcept {
    return static_cast<ItemId>(weekly_base() + c * kWeeklyCount + static_cast<std::size_t>(w));
  }

  ItemKind kind(ItemId id) const;
  ItemPayload decode(ItemId id) const;

 private:
  std::size_t poi_base() const noexcept { return kDemogCount * kBucketCount; }
  std::size_t category_base() const noexcept { return poi_base() + poi_count_; }
  std::size_t hourly_base() const noexcept { return category_base() + category_count_; }
  std::size_t weekly_base() const noexcept { return hourly_base() + category_count_ * kHourlyCount; }

  std::size_t poi_count_ = 0;
  std::size_t category_count_ = 0;
};

}  // namespace likemind
