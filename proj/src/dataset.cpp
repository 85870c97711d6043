#include "likemind/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <cereal/archives/portable_binary.hpp>
#include <cereal/types/array.hpp>
#include <cereal/types/string.hpp>
#include <cereal/types/vector.hpp>
#include <json.hpp>

namespace likemind {

namespace {

using json = nlohmann::json;
using namespace std::chrono;

constexpr std::uint32_t kSnapshotMagic = 0x4c4d4453;  // "LMDS"
constexpr std::uint32_t kSnapshotVersion = 1;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

Timestamp floor_div(Timestamp a, Timestamp b) {
  Timestamp q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::string id_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  throw std::invalid_argument("identifier must be a string or integer");
}

double number(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  if (!it->is_number()) throw std::invalid_argument(std::string("field \"") + key + "\" must be numeric");
  return it->get<double>();
}

template <class Fn>
void for_each_line(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw IngestError(source, lineno, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw IngestError(source, lineno, "expected a JSON object");
    try {
      fn(obj, lineno);
    } catch (const IngestError&) {
      throw;
    } catch (const std::exception& e) {
      throw IngestError(source, lineno, e.what());
    }
  }
}

struct RawPoi {
  Poi poi;
  std::vector<std::string> category_names;
  std::optional<double> rating;
};

}  // namespace

// --- discretization & time ---------------------------------------------------

BucketThresholds BucketThresholds::gowalla() {
  BucketThresholds t;
  t.upper[static_cast<std::size_t>(DemogAttribute::items)] = {2, 3, 5};
  t.upper[static_cast<std::size_t>(DemogAttribute::photos)] = {1, 2, 5};
  t.upper[static_cast<std::size_t>(DemogAttribute::friends)] = {1, 3, 5};
  t.upper[static_cast<std::size_t>(DemogAttribute::checkins)] = {3, 12, 34};
  t.upper[static_cast<std::size_t>(DemogAttribute::places)] = {3, 9, 23};
  return t;
}

Bucket discretize(const BucketThresholds& thresholds, DemogAttribute attribute, double raw_value) {
  if (!(raw_value >= 0.0)) throw ArgumentError("demographic value must be non-negative");
  const auto& up = thresholds.upper.at(static_cast<std::size_t>(attribute));
  if (raw_value <= up[0]) return Bucket::very_few;
  if (raw_value <= up[1]) return Bucket::few;
  if (raw_value <= up[2]) return Bucket::some;
  return Bucket::many;
}

DemographicBucket discretize(DemogAttribute attribute, double raw_value) {
  return {attribute, discretize(BucketThresholds::gowalla(), attribute, raw_value)};
}

DemographicBucket discretize(std::string_view attribute, double raw_value) {
  return discretize(parse_demog_attribute(attribute), raw_value);
}

Date date_of(Timestamp ts) noexcept { return Date{days{floor_div(ts, kSecondsPerDay)}}; }

TimeCategory time_category(Timestamp ts) noexcept {
  const Timestamp day = floor_div(ts, kSecondsPerDay);
  const int hour = static_cast<int>((ts - day * kSecondsPerDay) / kSecondsPerHour);
  TimeCategory tc;
  if (hour >= 5 && hour <= 11) {
    tc.hourly = Hourly::morning;
  } else if (hour >= 12 && hour <= 17) {
    tc.hourly = Hourly::afternoon;
  } else if (hour >= 18 && hour <= 22) {
    tc.hourly = Hourly::evening;
  } else {
    tc.hourly = Hourly::night;
  }
  const unsigned iso = weekday{Date{days{day}}}.iso_encoding();
  tc.weekly = iso >= 6 ? Weekly::weekend : Weekly::weekday;
  return tc;
}

std::optional<Timestamp> parse_timestamp(std::string_view s) noexcept {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), mo) || !parse_int(s.substr(8, 2), d))
    return std::nullopt;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  std::string_view rest = s.substr(10);
  int offset_s = 0;
  if (!rest.empty()) {
    if (rest[0] != 'T' && rest[0] != ' ') return std::nullopt;
    rest.remove_prefix(1);
    if (rest.size() < 5 || rest[2] != ':') return std::nullopt;
    if (!parse_int(rest.substr(0, 2), h) || !parse_int(rest.substr(3, 2), mi)) return std::nullopt;
    rest.remove_prefix(5);
    if (!rest.empty() && rest[0] == ':') {
      if (rest.size() < 3 || !parse_int(rest.substr(1, 2), sec)) return std::nullopt;
      rest.remove_prefix(3);
      if (!rest.empty() && rest[0] == '.') {
        std::size_t n = 1;
        while (n < rest.size() && std::isdigit(static_cast<unsigned char>(rest[n]))) ++n;
        rest.remove_prefix(n);
      }
    }
    if (!rest.empty()) {
      if (rest == "Z") {
        rest = {};
      } else if ((rest[0] == '+' || rest[0] == '-') && rest.size() == 6 && rest[3] == ':') {
        int oh = 0, om = 0;
        if (!parse_int(rest.substr(1, 2), oh) || !parse_int(rest.substr(4, 2), om)) return std::nullopt;
        offset_s = (oh * 3600 + om * 60) * (rest[0] == '-' ? -1 : 1);
      } else {
        return std::nullopt;
      }
    }
    if (h > 23 || mi > 59 || sec > 60) return std::nullopt;
  }
  const Timestamp days_since = sys_days{ymd}.time_since_epoch().count();
  return days_since * kSecondsPerDay + h * kSecondsPerHour + mi * 60 + sec - offset_s;
}

std::string format_date(Date d) {
  const year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_timestamp(Timestamp ts) {
  const Timestamp day = floor_div(ts, kSecondsPerDay);
  const Timestamp rem = ts - day * kSecondsPerDay;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02d", format_date(Date{days{day}}).c_str(),
                static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60), static_cast<int>(rem % 60));
  return buf;
}

BucketThresholds refit_thresholds(std::span<const Visitor> visitors) {
  BucketThresholds t = BucketThresholds::gowalla();
  if (visitors.empty()) return t;
  for (std::size_t a = 0; a < kDemogCount; ++a) {
    std::vector<double> values;
    values.reserve(visitors.size());
    for (const auto& v : visitors) values.push_back(v.demogs[a]);
    std::sort(values.begin(), values.end());
    for (std::size_t q = 0; q < 3; ++q) {
      // nearest-rank quantile at (q+1)/4
      const std::size_t rank = std::max<std::size_t>(1, (values.size() * (q + 1) + 3) / 4);
      t.upper[a][q] = values[rank - 1];
    }
  }
  return t;
}

// --- loading ----------------------------------------------------------------

Dataset Dataset::load(const DatasetSources& sources, const LoadConfig& config) {
  if (!sources.pois || !sources.visitors || !sources.checkins)
    throw ArgumentError("all three dataset sources are required");

  std::vector<std::string> warnings;
  std::vector<RawPoi> raw_pois;
  std::set<std::string> seen_poi_ids;
  std::set<std::string> category_set{std::string(kUncategorized)};

  for_each_line(*sources.pois, "pois", [&](const json& obj, std::size_t) {
    RawPoi r;
    r.poi.id = id_string(obj.at("id"));
    if (!seen_poi_ids.insert(r.poi.id).second) throw std::invalid_argument("duplicate POI id " + r.poi.id);
    r.poi.loc = {number(obj, "lat"), number(obj, "lon")};
    if (!r.poi.loc.valid()) throw std::invalid_argument("coordinates out of range");
    auto ins = obj.find("inserted");
    if (ins == obj.end() || !ins->is_string()) throw std::invalid_argument("missing field \"inserted\"");
    auto ts = parse_timestamp(ins->get<std::string>());
    if (!ts) throw std::invalid_argument("unparseable insertion date");
    r.poi.inserted = date_of(*ts);
    if (auto it = obj.find("checkins"); it != obj.end()) {
      const double c = it->get<double>();
      if (c < 0) throw std::invalid_argument("negative check-in count");
      r.poi.total_checkins = static_cast<std::uint64_t>(c);
    }
    if (auto it = obj.find("radius_m"); it != obj.end() && !it->is_null()) {
      r.poi.radius_m = it->get<double>();
      if (r.poi.radius_m < 0) throw std::invalid_argument("negative radius");
    }
    if (auto it = obj.find("categories"); it != obj.end() && it->is_array()) {
      for (const auto& c : *it) {
        std::string name = c.is_string() ? c.get<std::string>() : id_string(c);
        if (name.empty()) continue;
        r.category_names.push_back(name);
        category_set.insert(name);
      }
    }
    if (auto it = obj.find("rating"); it != obj.end() && !it->is_null()) {
      const double v = it->get<double>();
      if (v < 0 || v > 5) throw std::invalid_argument("rating outside [0,5]");
      r.rating = v;
    }
    raw_pois.push_back(std::move(r));
  });

  Parts parts;
  parts.utc_offset_minutes = config.utc_offset_minutes;
  parts.categories.assign(category_set.begin(), category_set.end());
  std::map<std::string, CategoryId> cat_ids;
  for (CategoryId i = 0; i < parts.categories.size(); ++i) cat_ids.emplace(parts.categories[i], i);

  double rating_sum = 0.0;
  std::size_t rating_n = 0;
  for (const auto& r : raw_pois) {
    if (r.rating) {
      rating_sum += *r.rating;
      ++rating_n;
    }
  }
  const double fill_rating = rating_n > 0 ? rating_sum / static_cast<double>(rating_n) : 0.5;

  std::sort(raw_pois.begin(), raw_pois.end(), [](const RawPoi& a, const RawPoi& b) { return a.poi.id < b.poi.id; });
  std::unordered_map<std::string, PoiIndex> poi_index;
  for (auto& r : raw_pois) {
    Poi p = std::move(r.poi);
    for (const auto& n : r.category_names) p.categories.push_back(cat_ids.at(n));
    if (p.categories.empty()) p.categories.push_back(cat_ids.at(std::string(kUncategorized)));
    std::sort(p.categories.begin(), p.categories.end());
    p.categories.erase(std::unique(p.categories.begin(), p.categories.end()), p.categories.end());
    p.rating = r.rating.value_or(fill_rating);
    p.rating_imputed = !r.rating.has_value();
    poi_index.emplace(p.id, static_cast<PoiIndex>(parts.pois.size()));
    parts.pois.push_back(std::move(p));
  }

  std::unordered_map<std::string, VisitorIndex> visitor_index;
  for_each_line(*sources.visitors, "users", [&](const json& obj, std::size_t) {
    Visitor v;
    v.id = id_string(obj.at("id"));
    if (visitor_index.count(v.id)) throw std::invalid_argument("duplicate visitor id " + v.id);
    if (auto it = obj.find("demogs"); it != obj.end()) {
      if (!it->is_object()) throw std::invalid_argument("\"demogs\" must be an object");
      for (const auto& [key, value] : it->items()) {
        DemogAttribute a;
        try {
          a = parse_demog_attribute(key);
        } catch (const ArgumentError&) {
          continue;  // attributes outside the five discretized ones are ignored
        }
        if (!value.is_number()) throw std::invalid_argument("demographic \"" + key + "\" must be numeric");
        const double x = value.get<double>();
        if (x < 0) throw std::invalid_argument("demographic \"" + key + "\" must be non-negative");
        v.demogs[static_cast<std::size_t>(a)] = x;
      }
    }
    visitor_index.emplace(v.id, static_cast<VisitorIndex>(parts.visitors.size()));
    parts.visitors.push_back(std::move(v));
  });

  const Timestamp shift = static_cast<Timestamp>(config.utc_offset_minutes) * 60;
  for_each_line(*sources.checkins, "checkins", [&](const json& obj, std::size_t lineno) {
    const std::string user = id_string(obj.at("user"));
    const std::string poi = id_string(obj.at("poi"));
    auto ts_it = obj.find("ts");
    if (ts_it == obj.end() || !ts_it->is_string()) throw std::invalid_argument("missing field \"ts\"");
    auto ts = parse_timestamp(ts_it->get<std::string>());
    if (!ts) throw std::invalid_argument("unparseable timestamp");
    auto pit = poi_index.find(poi);
    auto vit = visitor_index.find(user);
    if (pit == poi_index.end() || vit == visitor_index.end()) {
      const std::string msg = pit == poi_index.end() ? "dangling poi id " + poi : "unknown user id " + user;
      if (config.strict) throw IngestError("checkins", lineno, msg);
      warnings.push_back("checkins:" + std::to_string(lineno) + ": skipped, " + msg);
      return;
    }
    parts.checkins.push_back({vit->second, pit->second, *ts + shift});
  });

  if (config.refit_buckets) {
    parts.thresholds = refit_thresholds(parts.visitors);
  }
  Dataset ds = from_parts(std::move(parts));
  ds.warnings_ = std::move(warnings);
  return ds;
}

Dataset Dataset::load_files(const std::string& pois_path, const std::string& visitors_path,
                            const std::string& checkins_path, const LoadConfig& config) {
  std::ifstream p(pois_path), v(visitors_path), c(checkins_path);
  if (!p) throw Error("cannot open " + pois_path);
  if (!v) throw Error("cannot open " + visitors_path);
  if (!c) throw Error("cannot open " + checkins_path);
  return load({&p, &v, &c}, config);
}

Dataset Dataset::from_parts(Parts parts) {
  Dataset ds;
  if (std::find(parts.categories.begin(), parts.categories.end(), kUncategorized) == parts.categories.end())
    parts.categories.emplace_back(kUncategorized);

  // POIs ordered by id; check-ins re-pointed accordingly.
  std::vector<PoiIndex> order(parts.pois.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](PoiIndex a, PoiIndex b) { return parts.pois[a].id < parts.pois[b].id; });
  std::vector<PoiIndex> remap(parts.pois.size());
  ds.pois_.reserve(parts.pois.size());
  for (PoiIndex i = 0; i < order.size(); ++i) {
    remap[order[i]] = i;
    ds.pois_.push_back(std::move(parts.pois[order[i]]));
  }
  for (auto& c : parts.checkins) {
    if (c.poi >= remap.size() || c.visitor >= parts.visitors.size())
      throw ArgumentError("check-in references a missing POI or visitor");
    c.poi = remap[c.poi];
  }
  ds.visitors_ = std::move(parts.visitors);
  ds.checkins_ = std::move(parts.checkins);
  ds.categories_ = std::move(parts.categories);
  ds.thresholds_ = parts.thresholds;
  ds.utc_offset_minutes_ = parts.utc_offset_minutes;
  ds.finalize();
  return ds;
}

void Dataset::finalize() {
  for (auto& p : pois_) {
    if (!p.loc.valid()) throw ArgumentError("POI " + p.id + " has invalid coordinates");
    for (CategoryId c : p.categories)
      if (c >= categories_.size()) throw ArgumentError("POI " + p.id + " references an unknown category");
    if (p.categories.empty()) p.categories.push_back(uncategorized());
  }
  for (auto& v : visitors_) {
    for (std::size_t a = 0; a < kDemogCount; ++a)
      v.buckets[a] = discretize(thresholds_, static_cast<DemogAttribute>(a), v.demogs[a]);
  }

  std::sort(checkins_.begin(), checkins_.end(), [](const Checkin& a, const Checkin& b) {
    return std::tie(a.poi, a.ts, a.visitor) < std::tie(b.poi, b.ts, b.visitor);
  });
  poi_offsets_.assign(pois_.size() + 1, 0);
  for (const auto& c : checkins_) ++poi_offsets_[c.poi + 1];
  std::partial_sum(poi_offsets_.begin(), poi_offsets_.end(), poi_offsets_.begin());

  visitor_offsets_.assign(visitors_.size() + 1, 0);
  for (const auto& c : checkins_) ++visitor_offsets_[c.visitor + 1];
  std::partial_sum(visitor_offsets_.begin(), visitor_offsets_.end(), visitor_offsets_.begin());
  visitor_checkins_.resize(checkins_.size());
  std::iota(visitor_checkins_.begin(), visitor_checkins_.end(), 0u);
  std::stable_sort(visitor_checkins_.begin(), visitor_checkins_.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto& x = checkins_[a];
    const auto& y = checkins_[b];
    return std::tie(x.visitor, x.ts, x.poi) < std::tie(y.visitor, y.ts, y.poi);
  });

  poi_by_id_.clear();
  for (PoiIndex i = 0; i < pois_.size(); ++i) poi_by_id_.emplace(pois_[i].id, i);
  visitor_by_id_.clear();
  for (VisitorIndex i = 0; i < visitors_.size(); ++i) visitor_by_id_.emplace(visitors_[i].id, i);
  category_by_name_.clear();
  for (CategoryId i = 0; i < categories_.size(); ++i) category_by_name_.emplace(lower(categories_[i]), i);

  stats_ = {};
  std::set<CategoryId> universe;
  double rating_sum = 0.0;
  double lat_sum = 0.0;
  double min_lat = 90, max_lat = -90, min_lon = 180, max_lon = -180;
  for (std::size_t i = 0; i < pois_.size(); ++i) {
    const auto& p = pois_[i];
    stats_.max_poi_checkins = std::max(stats_.max_poi_checkins, p.total_checkins);
    stats_.max_radius_m = std::max(stats_.max_radius_m, p.radius_m);
    if (i == 0 || p.inserted < stats_.oldest_insertion_date) stats_.oldest_insertion_date = p.inserted;
    rating_sum += p.rating;
    lat_sum += p.loc.lat;
    min_lat = std::min(min_lat, p.loc.lat);
    max_lat = std::max(max_lat, p.loc.lat);
    min_lon = std::min(min_lon, p.loc.lon);
    max_lon = std::max(max_lon, p.loc.lon);
    universe.insert(p.categories.begin(), p.categories.end());
  }
  if (!pois_.empty()) {
    const double n = static_cast<double>(pois_.size());
    stats_.mean_rating = rating_sum / n;
    stats_.mean_latitude = lat_sum / n;
    constexpr double kDeg = 3.14159265358979323846 / 180.0;
    const double width = kEarthRadiusM * (max_lon - min_lon) * kDeg * std::cos(stats_.mean_latitude * kDeg);
    const double height = kEarthRadiusM * (max_lat - min_lat) * kDeg;
    stats_.city_area_m2 = std::abs(width * height);
  }
  stats_.category_universe.assign(universe.begin(), universe.end());
  items_ = ItemDictionary(pois_.size(), categories_.size());
}

std::span<const Checkin> Dataset::checkins_at(PoiIndex p) const {
  if (p >= pois_.size()) throw ArgumentError("POI index out of range");
  return std::span<const Checkin>(checkins_).subspan(poi_offsets_[p], poi_offsets_[p + 1] - poi_offsets_[p]);
}

std::span<const std::uint32_t> Dataset::checkins_of_visitor(VisitorIndex v) const {
  if (v >= visitors_.size()) throw ArgumentError("visitor index out of range");
  return std::span<const std::uint32_t>(visitor_checkins_)
      .subspan(visitor_offsets_[v], visitor_offsets_[v + 1] - visitor_offsets_[v]);
}

std::optional<PoiIndex> Dataset::find_poi(std::string_view id) const {
  auto it = poi_by_id_.find(std::string(id));
  if (it == poi_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<VisitorIndex> Dataset::find_visitor(std::string_view id) const {
  auto it = visitor_by_id_.find(std::string(id));
  if (it == visitor_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<CategoryId> Dataset::find_category(std::string_view name) const {
  auto it = category_by_name_.find(lower(name));
  if (it == category_by_name_.end()) return std::nullopt;
  return it->second;
}

CategoryId Dataset::uncategorized() const { return *find_category(kUncategorized); }

// --- snapshots ---------------------------------------------------------------

void Dataset::save(std::ostream& out) const {
  cereal::PortableBinaryOutputArchive ar(out);
  ar(kSnapshotMagic, kSnapshotVersion);
  ar(static_cast<std::uint64_t>(pois_.size()));
  for (const auto& p : pois_) {
    ar(p.id, p.loc.lat, p.loc.lon, static_cast<std::int64_t>(p.inserted.time_since_epoch().count()),
       p.total_checkins, p.radius_m, p.categories, p.rating, p.rating_imputed);
  }
  ar(static_cast<std::uint64_t>(visitors_.size()));
  for (const auto& v : visitors_) ar(v.id, v.demogs);
  ar(static_cast<std::uint64_t>(checkins_.size()));
  for (const auto& c : checkins_) ar(c.visitor, c.poi, c.ts);
  ar(categories_, thresholds_.upper, static_cast<std::int32_t>(utc_offset_minutes_), warnings_);
}

Dataset Dataset::restore(std::istream& in) {
  cereal::PortableBinaryInputArchive ar(in);
  std::uint32_t magic = 0, version = 0;
  try {
    ar(magic, version);
  } catch (const std::exception&) {
    throw Error("not a dataset snapshot");
  }
  if (magic != kSnapshotMagic) throw Error("not a dataset snapshot");
  if (version != kSnapshotVersion) throw Error("unsupported snapshot version " + std::to_string(version));
  Dataset ds;
  try {
    std::uint64_t n = 0;
    ar(n);
    ds.pois_.resize(n);
    for (auto& p : ds.pois_) {
      std::int64_t days_since = 0;
      ar(p.id, p.loc.lat, p.loc.lon, days_since, p.total_checkins, p.radius_m, p.categories, p.rating,
         p.rating_imputed);
      p.inserted = Date{days{days_since}};
    }
    ar(n);
    ds.visitors_.resize(n);
    for (auto& v : ds.visitors_) ar(v.id, v.demogs);
    ar(n);
    ds.checkins_.resize(n);
    for (auto& c : ds.checkins_) ar(c.visitor, c.poi, c.ts);
    std::int32_t offset = 0;
    ar(ds.categories_, ds.thresholds_.upper, offset, ds.warnings_);
    ds.utc_offset_minutes_ = offset;
  } catch (const cereal::Exception& e) {
    throw Error(std::string("truncated dataset snapshot: ") + e.what());
  }
  for (const auto& c : ds.checkins_)
    if (c.poi >= ds.pois_.size() || c.visitor >= ds.visitors_.size()) throw Error("corrupt dataset snapshot");
  ds.finalize();
  return ds;
}

void Dataset::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  save(out);
  if (!out) throw Error("failed writing " + path);
}

Dataset Dataset::restore_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return restore(in);
}

}  // namespace likemind
