#include "likemind/serialize.hpp"

#include <cmath>

namespace likemind {

Json to_json(const UtilityValues& values) {
  Json j = Json::object();
  for (auto k : kUtilityKinds) j[std::string(to_string(k))] = values[static_cast<std::size_t>(k)];
  return j;
}

Json to_json(const Mindset& m) {
  Json j;
  if (!m.key.empty()) j["key"] = m.key;
  j["label"] = m.label;
  if (!m.description.empty()) j["description"] = m.description;
  j["priors"] = to_json(m.priors);
  j["categories"] = m.categories;
  return j;
}

Json mindset_catalog() {
  Json list = Json::array();
  for (const auto& m : builtin_mindsets()) list.push_back(to_json(m));
  Json utilities = Json::array();
  for (auto k : kUtilityKinds) utilities.push_back(std::string(to_string(k)));
  return {{"mindsets", list}, {"utilities", utilities}};
}

Mindset mindset_from_json(const Json& j) {
  if (!j.is_object()) throw ArgumentError("a custom mindset must be a JSON object");
  Mindset m;
  auto label = j.find("label");
  if (label == j.end() || !label->is_string() || label->get<std::string>().empty())
    throw ArgumentError("a custom mindset needs a non-empty \"label\"");
  m.label = label->get<std::string>();
  auto priors = j.find("priors");
  if (priors == j.end() || !priors->is_object()) throw ArgumentError("a custom mindset needs a \"priors\" object");
  double total = 0.0;
  for (const auto& [name, value] : priors->items()) {
    const UtilityKind k = parse_utility_kind(name);
    if (!value.is_number()) throw ArgumentError("prior \"" + name + "\" must be a number");
    const double v = value.get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("prior \"" + name + "\" must lie in [0,1]");
    m.priors[static_cast<std::size_t>(k)] = v;
    total += v;
  }
  if (!(total > 0.0)) throw ArgumentError("at least one prior must be positive");
  if (auto cats = j.find("categories"); cats != j.end()) {
    if (!cats->is_array()) throw ArgumentError("\"categories\" must be an array of strings");
    for (const auto& c : *cats) {
      if (!c.is_string()) throw ArgumentError("\"categories\" must be an array of strings");
      m.categories.push_back(c.get<std::string>());
    }
  }
  if (auto d = j.find("description"); d != j.end() && d->is_string()) m.description = d->get<std::string>();
  return m;
}

Json to_json(const Poi& p, const Dataset& dataset) {
  Json cats = Json::array();
  for (CategoryId c : p.categories) cats.push_back(dataset.category_name(c));
  return {{"id", p.id},
          {"lat", p.loc.lat},
          {"lon", p.loc.lon},
          {"categories", cats},
          {"checkins", p.total_checkins},
          {"radius_m", p.radius_m},
          {"rating", p.rating},
          {"rating_imputed", p.rating_imputed},
          {"inserted", format_date(p.inserted)}};
}

Json to_json(const ItemPayload& item, const Dataset& dataset) {
  switch (item.kind) {
    case ItemKind::demographic:
      return {{"kind", "demographic"},
              {"attribute", std::string(to_string(item.demog.attribute))},
              {"bucket", std::string(to_string(item.demog.bucket))}};
    case ItemKind::poi:
      return {{"kind", "poi"}, {"poi", dataset.poi(item.poi).id}};
    case ItemKind::category:
      return {{"kind", "category"}, {"category", dataset.category_name(item.category)}};
    case ItemKind::category_hourly:
      return {{"kind", "category_hourly"},
              {"category", dataset.category_name(item.category)},
              {"hourly", std::string(to_string(item.hourly))}};
    case ItemKind::category_weekly:
      return {{"kind", "category_weekly"},
              {"category", dataset.category_name(item.category)},
              {"weekly", std::string(to_string(item.weekly))}};
  }
  return {};
}

Json to_json(const GroupDescription& d) {
  return {{"text", d.text},
          {"member_count", d.member_count},
          {"demographics", d.demographic_phrases},
          {"categories", d.category_phrases},
          {"times", d.time_phrases},
          {"pois", d.poi_names}};
}

Json group_to_json(const Group& g, const GroupDescription& d, double score, const Dataset& dataset) {
  Json items = Json::array();
  for (ItemId i : g.itemset) items.push_back(to_json(dataset.items().decode(i), dataset));
  Json pois = Json::array();
  for (PoiIndex p : g.display_pois) pois.push_back(to_json(dataset.poi(p), dataset));
  return {{"itemset", items},
          {"support", g.support},
          {"member_count", g.members.size()},
          {"score", score},
          {"description", to_json(d)},
          {"pois", pois}};
}

Json to_json(const EngineParams& p) {
  Json j{{"r", p.r}, {"k", p.k}, {"k_prime", p.k_prime}, {"sigma", p.sigma}};
  if (p.budget.mode == Budget::Mode::wall_clock)
    j["time_limit_ms"] = static_cast<double>(p.budget.time_limit.count()) / 1000.0;
  else
    j["max_swaps"] = p.budget.max_proposals;
  return j;
}

Json to_json(const IterationRecord& r) {
  Json groups = Json::array();
  for (const auto& g : r.groups)
    groups.push_back({{"description", g.description}, {"support", g.support}, {"score", g.score}, {"pois", g.pois}});
  return {{"iteration", r.index},
          {"mindset", r.mindset_label},
          {"params", to_json(r.params)},
          {"groups", groups},
          {"objective", r.objective},
          {"timestamp", format_timestamp(r.timestamp)}};
}

Json to_json(const StageTimings& t) {
  return {{"nearby_ms", t.nearby_ms},
          {"checkins_ms", t.checkins_ms},
          {"mining_ms", t.mining_ms},
          {"maximize_ms", t.maximize_ms},
          {"total_ms", t.total_ms()}};
}

Json to_json(const Context& c) {
  return {{"lat", c.loc.lat},
          {"lon", c.loc.lon},
          {"wall_time", format_timestamp(c.wall_time)},
          {"hourly", std::string(to_string(c.time.hourly))},
          {"weekly", std::string(to_string(c.time.weekly))}};
}

Json to_json(const Recommendation& rec, const Session& session, const Dataset& dataset, bool with_timings) {
  Json groups = Json::array();
  for (std::size_t i = 0; i < rec.groups.size(); ++i)
    groups.push_back(group_to_json(rec.groups[i], rec.explanations[i], rec.group_scores[i], dataset));
  Json j{{"session", session.id},
         {"iteration", rec.iteration},
         {"mindset", session.active_mindset ? session.active_mindset->label : ""},
         {"groups", groups},
         {"objective", rec.objective},
         {"relevance_relaxed", rec.relevance_relaxed},
         {"short_list", rec.short_list},
         {"diagnostic", rec.diagnostic},
         {"stats",
          {{"nearby_pois", rec.nearby_count},
           {"checkins", rec.checkin_count},
           {"candidate_groups", rec.candidate_count},
           {"proposals", rec.proposals}}},
         {"weights", to_json(session.weights)}};
  if (with_timings) j["timings"] = to_json(rec.timings);
  return j;
}

Json session_summary(const Session& s, const Dataset& dataset) {
  Json portfolio = Json::array();
  for (PoiIndex p : s.portfolio) portfolio.push_back(dataset.poi(p).id);
  Json history = Json::array();
  for (const auto& r : s.history) history.push_back(to_json(r));
  return {{"id", s.id},
          {"context", to_json(s.context)},
          {"portfolio", portfolio},
          {"weights", to_json(s.weights)},
          {"mindset", s.active_mindset ? Json(s.active_mindset->label) : Json()},
          {"history", history}};
}

EngineParams apply_overrides(EngineParams base, const Json& overrides) {
  if (overrides.is_null()) return base;
  if (!overrides.is_object()) throw ArgumentError("\"overrides\" must be an object");
  auto number = [](const Json& v, const std::string& key) {
    if (!v.is_number()) throw ArgumentError("override \"" + key + "\" must be a number");
    return v.get<double>();
  };
  auto count = [&](const Json& v, const std::string& key) {
    const double x = number(v, key);
    if (!(x >= 0.0) || x != std::floor(x)) throw ArgumentError("override \"" + key + "\" must be a non-negative integer");
    return static_cast<std::size_t>(x);
  };
  for (const auto& [key, value] : overrides.items()) {
    if (key == "r")
      base.r = number(value, key);
    else if (key == "k")
      base.k = count(value, key);
    else if (key == "k_prime" || key == "k'")
      base.k_prime = count(value, key);
    else if (key == "sigma")
      base.sigma = number(value, key);
    else if (key == "max_swaps")
      base.budget = Budget::proposals(count(value, key));
    else if (key == "time_limit_ms")
      base.budget = Budget::wall_clock(
          std::chrono::microseconds(static_cast<std::int64_t>(std::llround(number(value, key) * 1000.0))));
    else
      throw ArgumentError("unknown override \"" + key + "\"");
  }
  base.validate();
  return base;
}

}  // namespace likemind
