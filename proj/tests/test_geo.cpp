#include <doctest.h>

#include "support.hpp"

using namespace likemind;

namespace {

// spherical law of cosines
double cosine_distance(GeoPoint a, GeoPoint b) {
  const double d = std::acos(-1.0) / 180.0;
  const double c = std::sin(a.lat * d) * std::sin(b.lat * d) +
                   std::cos(a.lat * d) * std::cos(b.lat * d) * std::cos((b.lon - a.lon) * d);
  return 6371000.0 * std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

TEST_CASE("distance") {
  const GeoPoint louvre{48.8606, 2.3376}, hotel_de_ville{48.8530, 2.3499};
  CHECK(distance(louvre, louvre) == 0.0);
  CHECK(distance(louvre, hotel_de_ville) == distance(hotel_de_ville, louvre));
  CHECK(distance(louvre, hotel_de_ville) == doctest::Approx(1240).epsilon(0.02));
  CHECK(distance(louvre, hotel_de_ville) == doctest::Approx(cosine_distance(louvre, hotel_de_ville)).epsilon(1e-6));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lat(-80, 80), lon(-180, 180);
  for (int i = 0; i < 200; ++i) {
    const GeoPoint a{lat(rng), lon(rng)}, b{lat(rng), lon(rng)};
    CHECK(distance(a, b) == doctest::Approx(cosine_distance(a, b)).epsilon(1e-6));
  }
}

TEST_CASE("grid radius query equals a linear scan") {
  const Dataset& ds = lmtest::city();
  const GridIndex index(ds);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, ds.pois().size() - 1);
  std::uniform_real_distribution<double> jitter(-0.01, 0.01), radius(1, 1500);
  for (int q = 0; q < 1000; ++q) {
    const GeoPoint base = ds.poi(static_cast<PoiIndex>(pick(rng))).loc;
    const GeoPoint center{base.lat + jitter(rng), base.lon + jitter(rng)};
    const double r = radius(rng);
    std::vector<PoiIndex> scan;
    for (PoiIndex p = 0; p < ds.pois().size(); ++p)
      if (distance(ds.poi(p).loc, center) <= r) scan.push_back(p);
    const auto got = index.query(center, r);
    REQUIRE(got == scan);
  }
}

TEST_CASE("radius query edge cases") {
  const Dataset& ds = lmtest::city();
  const GridIndex index(ds);
  const PoiIndex p = 17;
  const auto tiny = index.query(ds.poi(p).loc, 1e-6);
  CHECK(std::find(tiny.begin(), tiny.end(), p) != tiny.end());
  CHECK(index.query(ds.poi(p).loc, 40075000.0).size() == ds.pois().size());
  CHECK_THROWS_AS(nearby_pois(index, ds.poi(p).loc, 0.0), ArgumentError);
  CHECK_THROWS_AS(nearby_pois(index, ds.poi(p).loc, -5.0), ArgumentError);

  std::vector<PoiIndex> prev;
  for (double r : {50.0, 200.0, 500.0, 1000.0}) {
    const auto cur = index.query(ds.poi(p).loc, r);
    CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    prev = cur;
  }
}

TEST_CASE("radius query across the antimeridian and near the pole") {
  Dataset::Parts parts;
  parts.categories = {"x"};
  const std::vector<GeoPoint> locs = {{0, 179.999}, {0, -179.999}, {89.999, 0}, {89.999, 180}, {10, 10}};
  for (std::size_t i = 0; i < locs.size(); ++i) {
    Poi p;
    p.id = "q" + std::to_string(i);
    p.loc = locs[i];
    p.categories = {0};
    parts.pois.push_back(p);
  }
  const Dataset ds = Dataset::from_parts(std::move(parts));
  const GridIndex index(ds);
  CHECK(index.query({0, 179.9995}, 500).size() == 2);
  CHECK(index.query({89.9995, 90}, 500).size() == 2);
}

TEST_CASE("time-matched check-ins equal a filtered scan") {
  const Dataset& ds = lmtest::city();
  const GridIndex index(ds);
  const auto nearby = index.query(ds.poi(42).loc, 500);
  std::vector<PoiIndex> sorted = nearby;
  std::size_t total = 0;
  for (auto h : {Hourly::morning, Hourly::afternoon, Hourly::evening, Hourly::night}) {
    const auto got = checkins_of(ds, nearby, h);
    std::vector<Checkin> scan;
    for (const auto& c : ds.checkins())
      if (std::binary_search(sorted.begin(), sorted.end(), c.poi) && time_category(c.ts).hourly == h)
        scan.push_back(c);
    auto key = [](const Checkin& a, const Checkin& b) {
      return std::tie(a.poi, a.ts, a.visitor) < std::tie(b.poi, b.ts, b.visitor);
    };
    auto g = got;
    std::sort(g.begin(), g.end(), key);
    std::sort(scan.begin(), scan.end(), key);
    CHECK(g == scan);
    total += got.size();
  }
  std::size_t all = 0;
  for (PoiIndex p : nearby) all += ds.checkins_at(p).size();
  CHECK(total == all);
  CHECK(checkins_of(ds, {}, Hourly::morning).empty());
}

TEST_CASE("check-in filter masks visitors and matches the weekly bucket") {
  const Dataset& ds = lmtest::city();
  const GridIndex index(ds);
  const auto nearby = index.query(ds.poi(42).loc, 800);
  const auto all = checkins_of(ds, nearby, Hourly::afternoon);
  REQUIRE(!all.empty());
  std::vector<VisitorIndex> masked = {all.front().visitor};
  CheckinFilter f{Hourly::afternoon, Weekly::weekend, masked};
  for (const auto& c : checkins_of(ds, nearby, f)) {
    CHECK(c.visitor != masked[0]);
    CHECK(time_category(c.ts).weekly == Weekly::weekend);
    CHECK(time_category(c.ts).hourly == Hourly::afternoon);
  }
}

TEST_CASE("all check-ins in one bucket leave the others empty") {
  Dataset::Parts parts;
  parts.categories = {"x"};
  Poi p;
  p.id = "a";
  p.loc = {1, 1};
  p.categories = {0};
  parts.pois.push_back(p);
  parts.visitors.push_back({"u", {}, {}});
  for (int d = 0; d < 5; ++d) parts.checkins.push_back({0, 0, *parse_timestamp("2010-06-01T14:00") + d * 86400});
  const Dataset ds = Dataset::from_parts(std::move(parts));
  const std::vector<PoiIndex> pois = {0};
  CHECK(checkins_of(ds, pois, Hourly::morning).empty());
  CHECK(checkins_of(ds, pois, Hourly::afternoon).size() == 5);
}

TEST_CASE("context derives its time category") {
  const auto c = Context::at({48.85, 2.35}, *parse_timestamp("2010-06-06T20:00"));
  CHECK(c.time.hourly == Hourly::evening);
  CHECK(c.time.weekly == Weekly::weekend);
}
