#include "likemind/synthetic.hpp"

#include "likemind/geo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

namespace likemind {

namespace {

using json = nlohmann::json;

struct Persona {
  std::vector<std::string> categories;
  std::array<double, 4> hour_weights;  // morning, afternoon, evening, night
  std::array<Bucket, kDemogCount> buckets;
};

const std::vector<Persona>& personas() {
  using B = Bucket;
  // demographic signatures differ pairwise in at least four attributes
  static const std::vector<Persona> all = {
      {{"sport fields", "park", "health and fitness", "gym", "tennis court", "bowling", "ice skating"},
       {0.6, 0.1, 0.3, 0.0},
       {B::very_few, B::some, B::few, B::some, B::many}},
      {{"food", "restaurant", "bakery"}, {0.1, 0.4, 0.5, 0.0}, {B::very_few, B::many, B::very_few, B::few, B::few}},
      {{"museum", "art", "gallery", "library", "sculpture", "bookstore", "movie theater"},
       {0.15, 0.7, 0.15, 0.0},
       {B::few, B::some, B::many, B::many, B::very_few}},
      {{"bar", "nightclub"}, {0.0, 0.05, 0.45, 0.5}, {B::some, B::very_few, B::some, B::many, B::many}},
      {{"coffee shop", "tea room", "outdoor", "food"}, {0.55, 0.4, 0.05, 0.0}, {B::some, B::few, B::very_few, B::some, B::some}},
      {{"historical landmark", "monument", "museum", "hotel", "shop"},
       {0.35, 0.55, 0.1, 0.0},
       {B::many, B::very_few, B::many, B::some, B::few}},
  };
  return all;
}

const std::vector<std::string>& filler_categories() {
  static const std::vector<std::string> names = {"shop", "hotel", "office", "train station", "pharmacy", "bakery",
                                                 "school", "bank"};
  return names;
}

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

GeoPoint offset(const GeoPoint& p, double north_m, double east_m) {
  const double dlat = north_m / kEarthRadiusM * 180.0 / std::numbers::pi;
  const double dlon = east_m / (kEarthRadiusM * std::cos(p.lat * std::numbers::pi / 180.0)) * 180.0 / std::numbers::pi;
  return {p.lat + dlat, p.lon + dlon};
}

double raw_value_in(Rng& rng, const BucketThresholds& t, DemogAttribute a, Bucket b) {
  const auto& u = t.upper[static_cast<std::size_t>(a)];
  switch (b) {
    case Bucket::very_few: return std::floor(uniform(rng, 0.0, u[0] + 1.0));
    case Bucket::few: return std::floor(uniform(rng, u[0] + 1.0, u[1] + 1.0));
    case Bucket::some: return std::floor(uniform(rng, u[1] + 1.0, u[2] + 1.0));
    case Bucket::many: break;
  }
  return std::floor(uniform(rng, u[2] + 1.0, 3.0 * u[2] + 4.0));
}

int draw_hour(Rng& rng, const std::array<double, 4>& weights) {
  std::discrete_distribution<int> slot(weights.begin(), weights.end());
  static constexpr std::array<std::pair<int, int>, 4> spans = {{{5, 11}, {12, 17}, {18, 22}, {23, 28}}};
  const auto [lo, hi] = spans[static_cast<std::size_t>(slot(rng))];
  return std::uniform_int_distribution<int>(lo, hi)(rng) % 24;
}

}  // namespace

SyntheticCity generate_city(const SyntheticConfig& config) {
  if (config.pois == 0 || config.visitors == 0 || config.neighbourhoods == 0)
    throw ArgumentError("the synthetic city needs POIs, visitors and neighbourhoods");
  Rng rng(config.seed);
  const auto& ps = personas();

  std::vector<GeoPoint> hoods;
  for (std::size_t h = 0; h < config.neighbourhoods; ++h) {
    const double rad = config.city_radius_m * std::sqrt(uniform(rng, 0.0, 1.0));
    const double ang = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    hoods.push_back(offset(config.center, rad * std::cos(ang), rad * std::sin(ang)));
  }

  struct GenPoi {
    GeoPoint loc;
    std::size_t hood;
    std::vector<std::string> categories;
    std::size_t persona;  // persona whose categories produced it, or ps.size()
    double appeal;
  };
  std::vector<GenPoi> pois;
  pois.reserve(config.pois);
  std::normal_distribution<double> jitter(0.0, config.neighbourhood_sigma_m);
  std::lognormal_distribution<double> appeal(0.0, 0.8);
  for (std::size_t i = 0; i < config.pois; ++i) {
    GenPoi p;
    p.hood = pick(rng, hoods.size());
    p.loc = offset(hoods[p.hood], jitter(rng), jitter(rng));
    p.appeal = appeal(rng);
    if (uniform(rng, 0.0, 1.0) < 0.8) {
      p.persona = pick(rng, ps.size());
      const auto& cats = ps[p.persona].categories;
      p.categories.push_back(cats[pick(rng, cats.size())]);
      if (uniform(rng, 0.0, 1.0) < config.second_category_share) p.categories.push_back(cats[pick(rng, cats.size())]);
    } else {
      p.persona = ps.size();
      p.categories.push_back(filler_categories()[pick(rng, filler_categories().size())]);
    }
    std::sort(p.categories.begin(), p.categories.end());
    p.categories.erase(std::unique(p.categories.begin(), p.categories.end()), p.categories.end());
    pois.push_back(std::move(p));
  }

  // per (neighbourhood, persona) pool of the most appealing matching POIs
  std::vector<std::vector<std::vector<std::size_t>>> pools(hoods.size(), std::vector<std::vector<std::size_t>>(ps.size()));
  for (std::size_t i = 0; i < pois.size(); ++i) {
    for (std::size_t q = 0; q < ps.size(); ++q) {
      const auto& cats = ps[q].categories;
      if (std::any_of(pois[i].categories.begin(), pois[i].categories.end(),
                      [&](const std::string& c) { return std::find(cats.begin(), cats.end(), c) != cats.end(); }))
        pools[pois[i].hood][q].push_back(i);
    }
  }
  for (auto& per_hood : pools)
    for (auto& pool : per_hood) {
      std::stable_sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) { return pois[a].appeal > pois[b].appeal; });
      if (pool.size() > config.pool_size) pool.resize(config.pool_size);
    }
  std::vector<std::vector<std::size_t>> by_hood(hoods.size());
  for (std::size_t i = 0; i < pois.size(); ++i) by_hood[pois[i].hood].push_back(i);

  const BucketThresholds thresholds = BucketThresholds::gowalla();
  struct GenVisitor {
    std::size_t persona, hood;
    std::vector<std::size_t> favourites;
    std::vector<double> favourite_weights;
  };
  std::vector<GenVisitor> visitors;
  std::ostringstream users;
  for (std::size_t v = 0; v < config.visitors; ++v) {
    GenVisitor g{pick(rng, ps.size()), pick(rng, hoods.size()), {}, {}};
    const auto& pool = pools[g.hood][g.persona];
    std::vector<double> w;
    for (auto i : pool) w.push_back(pois[i].appeal);
    const std::size_t want = std::min<std::size_t>(pool.size(), 6 + pick(rng, 9));
    for (std::size_t n = 0; n < want; ++n) {
      std::discrete_distribution<std::size_t> d(w.begin(), w.end());
      const std::size_t j = d(rng);
      w[j] = 0.0;
      g.favourites.push_back(pool[j]);
      g.favourite_weights.push_back(pois[pool[j]].appeal);
    }
    json demogs = json::object();
    for (auto a : kDemogAttributes) {
      Bucket b = ps[g.persona].buckets[static_cast<std::size_t>(a)];
      if (uniform(rng, 0.0, 1.0) < 0.15) b = static_cast<Bucket>(pick(rng, kBucketCount));
      demogs[std::string(to_string(a))] = raw_value_in(rng, thresholds, a, b);
    }
    users << json{{"id", "u" + std::to_string(v)}, {"demogs", demogs}}.dump() << '\n';
    visitors.push_back(std::move(g));
  }

  // trips of 2-5 check-ins, a few hours apart, until the budget is spent
  const Timestamp first_day =
      std::chrono::sys_days{std::chrono::year{2010} / 1 / 1}.time_since_epoch().count() * kSecondsPerDay;
  std::vector<std::uint64_t> counts(pois.size(), 0);
  std::ostringstream checkins;
  std::size_t emitted = 0;
  std::exponential_distribution<double> gap_minutes(1.0 / 50.0);
  while (emitted < config.checkins) {
    const std::size_t v = pick(rng, visitors.size());
    const auto& g = visitors[v];
    if (g.favourites.empty()) continue;
    const std::size_t len = std::min<std::size_t>(2 + pick(rng, 4), config.checkins - emitted);
    const Timestamp day = first_day + static_cast<Timestamp>(pick(rng, 300)) * kSecondsPerDay;
    Timestamp ts = day + draw_hour(rng, ps[g.persona].hour_weights) * kSecondsPerHour +
                   static_cast<Timestamp>(pick(rng, 60)) * 60;
    std::discrete_distribution<std::size_t> fav(g.favourite_weights.begin(), g.favourite_weights.end());
    const std::size_t start = g.favourites[fav(rng)];
    auto close = [&](std::span<const std::size_t> from) {
      std::vector<std::size_t> out;
      for (auto i : from)
        if (distance(pois[i].loc, pois[start].loc) <= config.trip_radius_m) out.push_back(i);
      return out;
    };
    const auto near_favourites = close(g.favourites);
    const auto near_pool = close(pools[g.hood][g.persona]);
    const auto near_any = close(by_hood[g.hood]);
    for (std::size_t s = 0; s < len; ++s) {
      std::size_t p = start;
      if (s > 0) {
        const double roll = uniform(rng, 0.0, 1.0);
        if (roll < 0.75)
          p = near_favourites[pick(rng, near_favourites.size())];
        else if (roll < 0.9)
          p = near_pool[pick(rng, near_pool.size())];
        else
          p = near_any[pick(rng, near_any.size())];
      }
      ++counts[p];
      checkins << json{{"user", "u" + std::to_string(v)},
                       {"poi", "p" + std::to_string(p)},
                       {"ts", format_timestamp(ts)}}
                      .dump()
               << '\n';
      ++emitted;
      ts += static_cast<Timestamp>(10 + std::llround(gap_minutes(rng))) * 60;
    }
  }

  // global counts are dominated by visitors outside the sample
  std::lognormal_distribution<double> outside(5.0, 1.5);
  std::ostringstream poi_lines;
  for (std::size_t i = 0; i < pois.size(); ++i) {
    const auto& p = pois[i];
    const Timestamp inserted = first_day - static_cast<Timestamp>(pick(rng, 700)) * kSecondsPerDay;
    json j{{"id", "p" + std::to_string(i)},
           {"lat", p.loc.lat},
           {"lon", p.loc.lon},
           {"inserted", format_date(date_of(inserted))},
           {"checkins", counts[i] + static_cast<std::uint64_t>(std::llround(outside(rng)))},
           {"radius_m", std::round(uniform(rng, 10.0, 200.0))},
           {"categories", p.categories}};
    if (uniform(rng, 0.0, 1.0) >= config.missing_rating_share)
      j["rating"] = std::round(uniform(rng, 2.0, 5.0) * 10.0) / 10.0;
    poi_lines << j.dump() << '\n';
  }
  return {poi_lines.str(), users.str(), checkins.str()};
}

Dataset load_synthetic(const SyntheticConfig& config, const LoadConfig& load) {
  const SyntheticCity city = generate_city(config);
  std::istringstream p(city.pois_jsonl), u(city.users_jsonl), c(city.checkins_jsonl);
  return Dataset::load({&p, &u, &c}, load);
}

void write_city(const SyntheticCity& city, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto put = [&](const char* name, const std::string& text) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
  };
  put("pois.jsonl", city.pois_jsonl);
  put("users.jsonl", city.users_jsonl);
  put("checkins.jsonl", city.checkins_jsonl);
}

}  // namespace likemind
