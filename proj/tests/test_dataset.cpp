#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "support.hpp"

using namespace likemind;
using lmtest::load_text;

namespace {

const std::string kThreePois =
    R"({"id":"a","lat":48.85,"lon":2.35,"inserted":"2009-01-01","checkins":10,"radius_m":50,"categories":["food"],"rating":4.0})"
    "\n"
    R"({"id":"b","lat":48.86,"lon":2.36,"inserted":"2009-06-01","checkins":20,"radius_m":80,"categories":["bar","food"]})"
    "\n"
    R"({"id":"c","lat":48.87,"lon":2.34,"inserted":"2008-03-01","checkins":30,"radius_m":20,"rating":2.0})"
    "\n";
const std::string kUsers = R"({"id":"u1","demogs":{"items":1,"photos":2,"friends":5,"check-ins":13,"places":40}})"
                           "\n"
                           R"({"id":"u2","demogs":{"items":9,"photos":0,"friends":0,"check-ins":3,"places":3}})"
                           "\n";

}  // namespace

TEST_CASE("discretize follows the bucket table") {
  CHECK(discretize("check-ins", 3).bucket == Bucket::very_few);
  CHECK(discretize("check-ins", 13).bucket == Bucket::some);
  CHECK(discretize("friends", 5).bucket == Bucket::some);
  CHECK(discretize("check-ins", 12).bucket == Bucket::few);
  CHECK(discretize("check-ins", 34).bucket == Bucket::some);
  CHECK(discretize("check-ins", 34.5).bucket == Bucket::many);
  CHECK(discretize("items", 0).bucket == Bucket::very_few);
  CHECK_THROWS_AS(discretize("shoe size", 3), ArgumentError);
  CHECK_THROWS_AS(discretize("items", -1), ArgumentError);
}

TEST_CASE("buckets partition the non-negative reals") {
  const auto t = BucketThresholds::gowalla();
  for (auto a : kDemogAttributes) {
    Bucket prev = Bucket::very_few;
    for (double x = 0; x < 60; x += 0.25) {
      const Bucket b = discretize(t, a, x);
      CHECK(static_cast<int>(b) >= static_cast<int>(prev));
      prev = b;
    }
    CHECK(prev == Bucket::many);
  }
}

TEST_CASE("time categories") {
  // 2010-06-01 was a Tuesday, 2010-06-06 a Sunday
  auto tc = time_category(*parse_timestamp("2010-06-01T13:00:00"));
  CHECK(tc.hourly == Hourly::afternoon);
  CHECK(tc.weekly == Weekly::weekday);
  tc = time_category(*parse_timestamp("2010-06-06T03:00:00"));
  CHECK(tc.hourly == Hourly::night);
  CHECK(tc.weekly == Weekly::weekend);
  CHECK(time_category(*parse_timestamp("2010-06-01T05:00")).hourly == Hourly::morning);
  CHECK(time_category(*parse_timestamp("2010-06-01T04:59")).hourly == Hourly::night);
  CHECK(time_category(*parse_timestamp("2010-06-01T11:59")).hourly == Hourly::morning);
  CHECK(time_category(*parse_timestamp("2010-06-01T12:00")).hourly == Hourly::afternoon);
  CHECK(time_category(*parse_timestamp("2010-06-01T18:00")).hourly == Hourly::evening);
  CHECK(time_category(*parse_timestamp("2010-06-01T22:59")).hourly == Hourly::evening);
  CHECK(time_category(*parse_timestamp("2010-06-01T23:00")).hourly == Hourly::night);
  CHECK(time_category(*parse_timestamp("2010-06-05T10:00")).weekly == Weekly::weekend);
  CHECK(time_category(*parse_timestamp("2010-06-04T23:30")).weekly == Weekly::weekday);
}

TEST_CASE("every hour maps to one bucket") {
  const Timestamp day = *parse_timestamp("2010-06-01");
  int counts[4] = {0, 0, 0, 0};
  for (int h = 0; h < 24; ++h) ++counts[static_cast<int>(time_category(day + h * 3600).hourly)];
  CHECK(counts[0] == 7);
  CHECK(counts[1] == 6);
  CHECK(counts[2] == 5);
  CHECK(counts[3] == 6);
}

TEST_CASE("timestamp parsing") {
  CHECK(parse_timestamp("1970-01-01") == 0);
  CHECK(parse_timestamp("1970-01-01T00:01:05Z") == 65);
  CHECK(parse_timestamp("1970-01-01T02:00:00+02:00") == 0);
  CHECK(parse_timestamp("1970-01-01T00:00:00.250") == 0);
  CHECK_FALSE(parse_timestamp("2010-13-01").has_value());
  CHECK_FALSE(parse_timestamp("yesterday").has_value());
  CHECK_FALSE(parse_timestamp("2010-01-01T25:00").has_value());
  CHECK(format_timestamp(*parse_timestamp("2011-02-03T04:05:06")) == "2011-02-03T04:05:06");
  CHECK(format_timestamp(-1) == "1969-12-31T23:59:59");
}

TEST_CASE("load a small dataset") {
  const std::string checkins = R"({"user":"u1","poi":"a","ts":"2010-06-01T09:00:00"})"
                               "\n"
                               R"({"user":"u2","poi":"c","ts":"2010-06-01T19:00:00"})"
                               "\n";
  const Dataset ds = load_text(kThreePois, kUsers, checkins);
  CHECK(ds.pois().size() == 3);
  CHECK(ds.visitors().size() == 2);
  CHECK(ds.checkins().size() == 2);
  CHECK(ds.stats().max_poi_checkins == 30);
  CHECK(ds.stats().max_radius_m == 80);
  CHECK(ds.stats().oldest_insertion_date == date_of(*parse_timestamp("2008-03-01")));

  const Poi& c = ds.poi(*ds.find_poi("c"));
  REQUIRE(c.categories.size() == 1);
  CHECK(ds.category_name(c.categories[0]) == "uncategorized");
  const Poi& b = ds.poi(*ds.find_poi("b"));
  CHECK(b.rating_imputed);
  CHECK(b.rating == doctest::Approx(3.0));
  CHECK(b.categories.size() == 2);

  const Visitor& u1 = ds.visitor(*ds.find_visitor("u1"));
  CHECK(u1.buckets[static_cast<std::size_t>(DemogAttribute::checkins)] == Bucket::some);
  CHECK(u1.buckets[static_cast<std::size_t>(DemogAttribute::friends)] == Bucket::some);
  CHECK(u1.buckets[static_cast<std::size_t>(DemogAttribute::items)] == Bucket::very_few);

  CHECK(ds.checkins_at(*ds.find_poi("a")).size() == 1);
  CHECK(ds.checkins_of_visitor(*ds.find_visitor("u2")).size() == 1);
  CHECK(ds.find_category("FOOD").has_value());
}

TEST_CASE("degenerate load: one POI, one visitor, no check-ins") {
  const Dataset ds = load_text(
      R"({"id":"x","lat":1,"lon":2,"inserted":"2009-01-01","checkins":7,"radius_m":5,"categories":["park"]})", kUsers, "");
  CHECK(ds.checkins().empty());
  CHECK(ds.stats().max_poi_checkins == 7);
  CHECK(ds.stats().max_radius_m == 5);
  CHECK(ds.stats().city_area_m2 == 0);
  CHECK(ds.poi(0).rating == doctest::Approx(0.5));
}

TEST_CASE("dangling references are skipped with a warning or rejected in strict mode") {
  const std::string checkins = R"({"user":"u1","poi":"a","ts":"2010-06-01T09:00:00"})"
                               "\n"
                               R"({"user":"u1","poi":"zzz","ts":"2010-06-01T09:00:00"})"
                               "\n";
  const Dataset ds = load_text(kThreePois, kUsers, checkins);
  CHECK(ds.checkins().size() == 1);
  REQUIRE(ds.warnings().size() == 1);
  CHECK(ds.warnings()[0].find("zzz") != std::string::npos);

  LoadConfig strict;
  strict.strict = true;
  try {
    load_text(kThreePois, kUsers, checkins, strict);
    FAIL("expected an ingest error");
  } catch (const IngestError& e) {
    CHECK(e.line() == 2);
    CHECK(e.source() == "checkins");
  }
}

TEST_CASE("malformed rows report their line") {
  try {
    load_text(kThreePois + "{not json}\n", kUsers, "");
    FAIL("expected an ingest error");
  } catch (const IngestError& e) {
    CHECK(e.source() == "pois");
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(load_text(R"({"id":"x","lat":100,"lon":2,"inserted":"2009-01-01"})", kUsers, ""), IngestError);
  CHECK_THROWS_AS(load_text(R"({"id":"x","lat":1,"lon":2})", kUsers, ""), IngestError);
}

TEST_CASE("utc offset shifts check-ins into local time") {
  LoadConfig cfg;
  cfg.utc_offset_minutes = 120;
  const Dataset ds = load_text(kThreePois, kUsers, R"({"user":"u1","poi":"a","ts":"2010-06-01T10:00:00Z"})", cfg);
  CHECK(time_category(ds.checkins()[0].ts).hourly == Hourly::afternoon);
}

TEST_CASE("refit buckets uses equal-frequency quartiles") {
  std::string users;
  for (int i = 1; i <= 8; ++i)
    users += R"({"id":"u)" + std::to_string(i) + R"(","demogs":{"items":)" + std::to_string(i) +
             R"(,"photos":0,"friends":0,"check-ins":0,"places":0}})" + "\n";
  LoadConfig cfg;
  cfg.refit_buckets = true;
  const Dataset ds = load_text(kThreePois, users, "", cfg);
  const auto& up = ds.thresholds().upper[static_cast<std::size_t>(DemogAttribute::items)];
  CHECK(up[0] == 2);
  CHECK(up[1] == 4);
  CHECK(up[2] == 6);
  std::size_t per_bucket[4] = {0, 0, 0, 0};
  for (const auto& v : ds.visitors()) ++per_bucket[static_cast<int>(v.buckets[0])];
  for (auto n : per_bucket) CHECK(n == 2);
}

TEST_CASE("snapshot round trip is exact and deterministic") {
  SyntheticConfig small;
  small.pois = 300;
  small.visitors = 120;
  small.checkins = 2000;
  const Dataset a = load_synthetic(small);
  const Dataset b = load_synthetic(small);
  std::ostringstream sa, sb;
  a.save(sa);
  b.save(sb);
  CHECK(sa.str() == sb.str());

  std::istringstream in(sa.str());
  const Dataset r = Dataset::restore(in);
  REQUIRE(r.pois().size() == a.pois().size());
  CHECK(r.checkins().size() == a.checkins().size());
  CHECK(std::equal(r.checkins().begin(), r.checkins().end(), a.checkins().begin()));
  CHECK(r.stats().city_area_m2 == a.stats().city_area_m2);
  CHECK(r.thresholds() == a.thresholds());
  for (std::size_t i = 0; i < a.pois().size(); ++i) {
    CHECK(r.poi(i).id == a.poi(i).id);
    CHECK(r.poi(i).categories == a.poi(i).categories);
    CHECK(r.poi(i).rating == a.poi(i).rating);
  }
  std::ostringstream again;
  r.save(again);
  CHECK(again.str() == sa.str());

  std::istringstream junk("definitely not a snapshot");
  CHECK_THROWS(Dataset::restore(junk));
}

TEST_CASE("item dictionary is a bijection") {
  const ItemDictionary d(7, 3);
  for (ItemId i = 0; i < d.size(); ++i) {
    const ItemPayload p = d.decode(i);
    ItemId back = 0;
    switch (p.kind) {
      case ItemKind::demographic: back = d.demographic(p.demog); break;
      case ItemKind::poi: back = d.poi(p.poi); break;
      case ItemKind::category: back = d.category(p.category); break;
      case ItemKind::category_hourly: back = d.category_hourly(p.category, p.hourly); break;
      case ItemKind::category_weekly: back = d.category_weekly(p.category, p.weekly); break;
    }
    CHECK(back == i);
  }
  CHECK(d.size() == 20 + 7 + 3 * 7);
}
