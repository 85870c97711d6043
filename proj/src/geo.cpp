#include "likemind/geo.hpp"

#include <algorithm>
#include <cmath>

namespace likemind {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDeg = kPi / 180.0;

}  // namespace

double distance(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double phi1 = a.lat * kDeg;
  const double phi2 = b.lat * kDeg;
  const double dphi = (b.lat - a.lat) * kDeg;
  const double dlambda = (b.lon - a.lon) * kDeg;
  const double s1 = std::sin(dphi / 2);
  const double s2 = std::sin(dlambda / 2);
  const double h = std::min(1.0, s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

Context Context::at(GeoPoint loc, Timestamp wall_time) {
  if (!loc.valid()) throw ArgumentError("context coordinates out of range");
  return {loc, time_category(wall_time), wall_time};
}

GridIndex::GridIndex(const Dataset& dataset, double cell_size_m) : dataset_(&dataset) {
  if (!(cell_size_m > 0)) throw ArgumentError("grid cell size must be positive");
  cell_deg_ = std::min(cell_size_m / (kEarthRadiusM * kDeg), 180.0);
  rows_ = static_cast<std::int64_t>(std::ceil(180.0 / cell_deg_)) + 1;
  cols_ = static_cast<std::int64_t>(std::ceil(360.0 / cell_deg_));
  const auto pois = dataset.pois();
  for (PoiIndex i = 0; i < pois.size(); ++i) {
    const auto row = static_cast<std::int64_t>(std::floor((pois[i].loc.lat + 90.0) / cell_deg_));
    auto col = static_cast<std::int64_t>(std::floor((pois[i].loc.lon + 180.0) / cell_deg_));
    col = ((col % cols_) + cols_) % cols_;
    cells_[key(row, col)].push_back(i);
  }
}

std::uint64_t GridIndex::key(std::int64_t row, std::int64_t col) const noexcept {
  return static_cast<std::uint64_t>(row) * static_cast<std::uint64_t>(cols_) + static_cast<std::uint64_t>(col);
}

std::vector<PoiIndex> GridIndex::query(const GeoPoint& center, double r) const {
  if (!(r > 0)) throw ArgumentError("radius must be positive");
  if (!center.valid()) throw ArgumentError("query center out of range");
  const auto pois = dataset_->pois();
  std::vector<PoiIndex> out;

  const double delta = r / kEarthRadiusM;  // angular radius
  auto scan_all = [&] {
    for (PoiIndex i = 0; i < pois.size(); ++i)
      if (distance(pois[i].loc, center) <= r) out.push_back(i);
    return out;
  };
  if (delta >= kPi / 2) return scan_all();

  // Padded so rounding in the bound never drops a boundary point; the exact
  // distance filter below decides membership.
  const double pad = 1e-9 + cell_deg_ * 1e-6;
  const double dlat = delta / kDeg + pad;
  const double lat_lo = std::max(-90.0, center.lat - dlat);
  const double lat_hi = std::min(90.0, center.lat + dlat);
  double dlon = 180.0;
  const double cos_lat = std::cos(center.lat * kDeg);
  if (lat_lo > -90.0 && lat_hi < 90.0 && std::sin(delta) < cos_lat) {
    dlon = std::asin(std::sin(delta) / cos_lat) / kDeg + pad;
  }

  const auto row_lo = static_cast<std::int64_t>(std::floor((lat_lo + 90.0) / cell_deg_));
  const auto row_hi = static_cast<std::int64_t>(std::floor((lat_hi + 90.0) / cell_deg_));
  std::int64_t col_lo = 0, col_hi = cols_ - 1;
  if (dlon < 180.0) {
    col_lo = static_cast<std::int64_t>(std::floor((center.lon - dlon + 180.0) / cell_deg_));
    col_hi = static_cast<std::int64_t>(std::floor((center.lon + dlon + 180.0) / cell_deg_));
    if (col_hi - col_lo + 1 >= cols_) {
      col_lo = 0;
      col_hi = cols_ - 1;
    }
  }
  const auto cell_count = static_cast<double>(row_hi - row_lo + 1) * static_cast<double>(col_hi - col_lo + 1);
  if (cell_count > static_cast<double>(cells_.size()) * 4.0 + 64.0) return scan_all();

  for (auto row = row_lo; row <= row_hi; ++row) {
    for (auto c = col_lo; c <= col_hi; ++c) {
      const auto col = ((c % cols_) + cols_) % cols_;
      auto it = cells_.find(key(row, col));
      if (it == cells_.end()) continue;
      for (PoiIndex i : it->second)
        if (distance(pois[i].loc, center) <= r) out.push_back(i);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PoiIndex> nearby_pois(const GridIndex& index, const GeoPoint& center, double r) {
  return index.query(center, r);
}

std::vector<Checkin> checkins_of(const Dataset& dataset, std::span<const PoiIndex> pois, const CheckinFilter& filter) {
  std::vector<Checkin> out;
  for (PoiIndex p : pois) {
    for (const auto& c : dataset.checkins_at(p)) {
      const TimeCategory tc = time_category(c.ts);
      if (tc.hourly != filter.hourly) continue;
      if (filter.weekly && tc.weekly != *filter.weekly) continue;
      if (!filter.masked.empty() && std::binary_search(filter.masked.begin(), filter.masked.end(), c.visitor))
        continue;
      out.push_back(c);
    }
  }
  return out;
}

std::vector<Checkin> checkins_of(const Dataset& dataset, std::span<const PoiIndex> pois, Hourly hourly) {
  return checkins_of(dataset, pois, CheckinFilter{hourly, std::nullopt, {}});
}

}  // namespace likemind
