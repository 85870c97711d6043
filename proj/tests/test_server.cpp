#include <doctest.h>

#include <sstream>
#include <thread>

#include "likemind/server.hpp"
#include "support.hpp"

using namespace likemind;

namespace {

ServerConfig deterministic() {
  ServerConfig c;
  c.deterministic = true;
  c.seed = 9;
  return c;
}

std::string session_body(const Dataset& ds) {
  const Checkin& c = ds.checkins()[2024];
  const GeoPoint loc = ds.poi(c.poi).loc;
  return Json{{"lat", loc.lat}, {"lon", loc.lon}, {"wall_time", format_timestamp(c.ts)}}.dump();
}

std::string open(Service& s, const Dataset& ds) {
  const auto r = s.handle("POST", "/v1/sessions", session_body(ds));
  REQUIRE(r.status == 201);
  return r.body.at("id").get<std::string>();
}

}  // namespace

TEST_CASE("bind parsing") {
  ServerConfig c;
  c.set_bind("0.0.0.0:9000");
  CHECK(c.host == "0.0.0.0");
  CHECK(c.port == 9000);
  c.set_bind(":7000");
  CHECK(c.host == "0.0.0.0");
  CHECK(c.port == 7000);
  c.set_bind("81");
  CHECK(c.port == 81);
  CHECK_THROWS_AS(c.set_bind("host:"), ArgumentError);
  CHECK_THROWS_AS(c.set_bind("host:99999"), ArgumentError);
  CHECK_THROWS_AS(c.set_bind("host:8o"), ArgumentError);
}

TEST_CASE("catalog and POI lookup") {
  const Dataset& ds = lmtest::city();
  Service s(ds, {}, deterministic());
  auto r = s.handle("GET", "/v1/mindsets", "");
  CHECK(r.status == 200);
  CHECK(r.body.at("mindsets").size() == 7);
  CHECK(r.body.at("utilities").size() == kUtilityCount);

  r = s.handle("GET", "/v1/pois/" + ds.poi(3).id, "");
  CHECK(r.status == 200);
  CHECK(r.body.at("id") == ds.poi(3).id);
  CHECK(s.handle("GET", "/v1/pois/nope", "").status == 404);
  CHECK(s.handle("POST", "/v1/mindsets", "").status == 405);
  CHECK(s.handle("GET", "/v2/mindsets", "").status == 404);
  CHECK(s.handle("GET", "/v1/sessions/x/other", "").status == 404);
}

TEST_CASE("session lifecycle") {
  const Dataset& ds = lmtest::city();
  Service s(ds, {}, deterministic());
  const std::string id = open(s, ds);
  CHECK(id.size() == 32);
  CHECK(s.session_count() == 1);

  auto r = s.handle("GET", "/v1/sessions/" + id, "");
  CHECK(r.status == 200);
  CHECK(r.body.at("portfolio").empty());
  CHECK(r.body.at("history").empty());
  CHECK(s.handle("GET", "/v1/sessions/missing", "").status == 404);

  r = s.handle("POST", "/v1/sessions/" + id + "/recommend", R"({"mindset": "I'm hungry"})");
  REQUIRE(r.status == 200);
  CHECK(r.body.at("iteration") == 1);
  CHECK_FALSE(r.body.contains("timings"));
  const auto& groups = r.body.at("groups");
  REQUIRE(!groups.empty());
  CHECK(groups.size() <= 5);
  for (const auto& g : groups) CHECK(g.at("pois").size() <= 5);
  const std::string poi = groups[0].at("pois")[0].at("id");

  r = s.handle("POST", "/v1/sessions/" + id + "/bookmarks", Json{{"poi", poi}}.dump());
  CHECK(r.status == 200);
  CHECK(r.body.at("added") == true);
  CHECK(r.body.at("portfolio") == Json::array({poi}));
  r = s.handle("POST", "/v1/sessions/" + id + "/bookmarks", Json{{"poi", poi}}.dump());
  CHECK(r.status == 200);
  CHECK(r.body.at("added") == false);

  std::string undisplayed;
  for (const auto& p : ds.pois()) {
    bool shown = false;
    for (const auto& g : groups)
      for (const auto& q : g.at("pois")) shown = shown || q.at("id") == p.id;
    if (!shown) {
      undisplayed = p.id;
      break;
    }
  }
  CHECK(s.handle("POST", "/v1/sessions/" + id + "/bookmarks", Json{{"poi", undisplayed}}.dump()).status == 409);
  CHECK(s.handle("POST", "/v1/sessions/" + id + "/bookmarks", R"({"poi": "nope"})").status == 404);

  r = s.handle("POST", "/v1/sessions/" + id + "/recommend", R"({"mindset": "I'm hungry"})");
  REQUIRE(r.status == 200);
  const auto p = ds.find_poi(poi);
  REQUIRE(p);
  if (!r.body.at("relevance_relaxed").get<bool>()) {
    // every group visited the bookmarked POI
    for (const auto& g : r.body.at("groups")) {
      bool has = false;
      for (const auto& item : g.at("itemset")) has = has || (item.at("kind") == "poi" && item.at("poi") == poi);
      CHECK(has);
    }
  }
  r = s.handle("GET", "/v1/sessions/" + id, "");
  CHECK(r.body.at("history").size() == 2);
}

TEST_CASE("request validation") {
  const Dataset& ds = lmtest::city();
  Service s(ds, {}, deterministic());
  CHECK(s.handle("POST", "/v1/sessions", "{").status == 400);
  CHECK(s.handle("POST", "/v1/sessions", R"({"lat": 1})").status == 400);
  CHECK(s.handle("POST", "/v1/sessions", R"({"lat": 91, "lon": 0})").status == 400);
  CHECK(s.handle("POST", "/v1/sessions", R"({"lat": 1, "lon": 2, "wall_time": "soon"})").status == 400);
  CHECK(s.handle("POST", "/v1/sessions", "[1]").status == 400);

  const std::string id = open(s, ds);
  const std::string path = "/v1/sessions/" + id + "/recommend";
  auto r = s.handle("POST", path, R"({"mindset": "nap time"})");
  CHECK(r.status == 400);
  CHECK(r.body.at("labels").size() == 7);
  CHECK(s.handle("POST", path, "{}").status == 400);
  CHECK(s.handle("POST", path, R"({"mindset": "me time", "overrides": {"k": 0}})").status == 400);
  CHECK(s.handle("POST", path, R"({"mindset": "me time", "overrides": {"sigma": 2}})").status == 400);
  CHECK(s.handle("POST", path, R"({"mindset": "me time", "overrides": {"k": "3"}})").status == 400);
  CHECK(s.handle("POST", "/v1/sessions/nope/recommend", R"({"mindset": "me time"})").status == 404);
  CHECK(s.handle("GET", path, "").status == 405);
}

TEST_CASE("overrides and custom mindsets") {
  const Dataset& ds = lmtest::city();
  Service s(ds, {}, deterministic());
  const std::string id = open(s, ds);
  const std::string path = "/v1/sessions/" + id + "/recommend";
  auto r = s.handle("POST", path, R"({"mindset": "me time", "overrides": {"k": 3, "k_prime": 3}})");
  REQUIRE(r.status == 200);
  CHECK(r.body.at("groups").size() <= 3);
  for (const auto& g : r.body.at("groups")) CHECK(g.at("pois").size() <= 3);

  Json custom = {{"label", "mine"},
                 {"priors", {{"popularity", 0.5}, {"category", 0.5}}},
                 {"categories", {"food"}}};
  r = s.handle("POST", path, Json{{"mindset", custom}}.dump());
  CHECK(r.status == 200);
  CHECK(r.body.at("mindset") == "mine");
}

TEST_CASE("wall-clock mode reports stage timings") {
  const Dataset& ds = lmtest::city();
  Service s(ds, {}, ServerConfig{});
  const std::string id = open(s, ds);
  const auto r = s.handle("POST", "/v1/sessions/" + id + "/recommend", R"({"mindset": "me time"})");
  REQUIRE(r.status == 200);
  CHECK(r.body.at("timings").at("total_ms").get<double>() >= 0);
}

TEST_CASE("idle sessions expire") {
  const Dataset& ds = lmtest::city();
  auto cfg = deterministic();
  cfg.session_ttl = std::chrono::seconds(0);
  Service s(ds, {}, cfg);
  const std::string id = open(s, ds);
  std::this_thread::sleep_for(std::chrono::milliseconds(5));
  CHECK(s.handle("GET", "/v1/sessions/" + id, "").status == 404);
  CHECK(s.session_count() == 0);
}

TEST_CASE("replaying a request log is deterministic") {
  const Dataset& ds = lmtest::city();
  Service first(ds, {}, deterministic());
  const std::string id = open(first, ds);
  std::ostringstream log;
  auto rec = [&](std::string method, std::string path, std::string body) {
    log << Json{{"method", method}, {"path", path}, {"body", body}}.dump() << '\n';
  };
  rec("POST", "/v1/sessions", session_body(ds));
  rec("POST", "/v1/sessions/" + id + "/recommend", R"({"mindset": "I'm hungry"})");
  rec("GET", "/v1/sessions/" + id, "");
  rec("POST", "/v1/sessions/" + id + "/recommend", R"({"mindset": "let's learn", "overrides": {"k": 3}})");
  rec("GET", "/v1/mindsets", "");

  Service a(ds, {}, deterministic()), b(ds, {}, deterministic());
  std::istringstream la(log.str()), lb(log.str());
  const auto ra = replay(a, la);
  const auto rb = replay(b, lb);
  REQUIRE(ra.size() == 5);
  CHECK(ra == rb);
  CHECK(Json::parse(ra[1]).at("status") == 200);
  CHECK(Json::parse(ra[1]).at("body").at("session") == id);
}
