#include "likemind/items.hpp"

namespace likemind {

ItemKind ItemDictionary::kind(ItemId id) const {
  const std::size_t i = id;
  if (i < poi_base()) return ItemKind::demographic;
  if (i < category_base()) return ItemKind::poi;
  if (i < hourly_base()) return ItemKind::category;
  if (i < weekly_base()) return ItemKind::category_hourly;
  if (i < size()) return ItemKind::category_weekly;
  throw ArgumentError("item id out of range: " + std::to_string(id));
}

ItemPayload ItemDictionary::decode(ItemId id) const {
  ItemPayload p;
  p.kind = kind(id);
  const std::size_t i = id;
  switch (p.kind) {
    case ItemKind::demographic:
      p.demog.attribute = static_cast<DemogAttribute>(i / kBucketCount);
      p.demog.bucket = static_cast<Bucket>(i % kBucketCount);
      break;
    case ItemKind::poi:
      p.poi = static_cast<PoiIndex>(i - poi_base());
      break;
    case ItemKind::category:
      p.category = static_cast<CategoryId>(i - category_base());
      break;
    case ItemKind::category_hourly: {
      const std::size_t off = i - hourly_base();
      p.category = static_cast<CategoryId>(off / kHourlyCount);
      p.hourly = static_cast<Hourly>(off % kHourlyCount);
      break;
    }
    case ItemKind::category_weekly: {
      const std::size_t off = i - weekly_base();
      p.category = static_cast<CategoryId>(off / kWeeklyCount);
      p.weekly = static_cast<Weekly>(off % kWeeklyCount);
      break;
    }
  }
  return p;
}

}  // namespace likemind
