#include "likemind/mindsets.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace likemind {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<Mindset> make_builtins() {
  //                 pop   pre   rec   cov   sur   cat   div   size
  return {
      {"m1", "I'm new here", "well-known sights for first-time visitors",
       {0.25, 0.25, 0.10, 0.15, 0.00, 0.00, 0.25, 0.00}, {}},
      {"m2", "surprise me", "uncommon places the user has not seen yet",
       {0.25, 0.20, 0.00, 0.00, 0.30, 0.00, 0.15, 0.10}, {}},
      {"m3", "let's workout", "places for sport and exercise",
       {0.25, 0.25, 0.00, 0.10, 0.00, 0.40, 0.00, 0.00},
       {"sport fields", "park", "health and fitness", "bowling", "tennis court", "ice skating", "gym"}},
      {"m4", "me time", "solo activities to unwind",
       {0.10, 0.10, 0.00, 0.10, 0.00, 0.40, 0.00, 0.30},
       {"outdoor", "food", "tea room", "bar", "coffee shop"}},
      {"m5", "I'm hungry", "quick access to food nearby",
       {0.05, 0.20, 0.10, 0.15, 0.00, 0.40, 0.05, 0.05},
       {"food", "restaurant"}},
      {"m6", "let's learn", "museums, libraries and cultural landmarks",
       {0.20, 0.20, 0.00, 0.10, 0.00, 0.40, 0.10, 0.00},
       {"museum", "art", "gallery", "library", "sculpture", "bookstore", "movie theater", "historical landmark",
        "monument"}},
      {"m7", "hidden gems", "well-rated local spots off the beaten track",
       {0.30, 0.30, 0.15, 0.00, 0.00, 0.00, 0.00, 0.25}, {}},
  };
}

}  // namespace

const std::vector<Mindset>& builtin_mindsets() {
  static const std::vector<Mindset> builtins = make_builtins();
  return builtins;
}

std::optional<Mindset> find_builtin_mindset(std::string_view label_or_key) {
  const std::string needle = lower(label_or_key);
  for (const auto& m : builtin_mindsets())
    if (lower(m.label) == needle || m.key == needle) return m;
  return std::nullopt;
}

double score(const Priors& priors, const WeightVector& weights, const UtilityValues& values) noexcept {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < kUtilityCount; ++i) {
    const double wb = weights[i] * priors[i];
    num += wb * values[i];
    den += wb;
  }
  if (!(den > 0.0)) return 0.0;
  return num / den;
}

double score(const Mindset& m, PoiSet pois, const WeightVector& weights, const UtilityEnv& env) {
  UtilityValues values{};
  for (std::size_t i = 0; i < kUtilityCount; ++i) {
    // utilities with no say in the score are not computed
    if (m.priors[i] * weights[i] != 0.0) values[i] = evaluate(kUtilityKinds[i], pois, env);
  }
  return score(m.priors, weights, values);
}

WeightVector update_weights(PoiSet portfolio, const UtilityEnv& env) {
  if (portfolio.empty()) return initial_weights();
  UtilityEnv own = env;
  own.portfolio_categories = categories_of(portfolio);
  return evaluate_all(portfolio, own);
}

Mindset create_from_pois(std::string label, PoiSet pois, const UtilityEnv& env, const Dataset& dataset) {
  if (pois.empty()) throw ArgumentError("a mindset needs at least one POI");
  Mindset m;
  m.label = std::move(label);
  m.description = "custom mindset";
  m.priors = evaluate_all(pois, env);
  double total = 0.0;
  for (double b : m.priors) total += b;
  if (total > 0.0) {
    for (double& b : m.priors) b /= total;
  } else {
    m.priors.fill(1.0 / static_cast<double>(kUtilityCount));
  }
  for (CategoryId c : categories_of(pois)) m.categories.push_back(dataset.category_name(c));
  return m;
}

Mindset combine(std::string label, std::span<const Mindset> members) {
  if (members.size() < 2) throw ArgumentError("combining needs at least two mindsets");
  Mindset m;
  m.label = std::move(label);
  m.description = "combination of";
  std::set<std::string> cats;
  for (const auto& member : members) {
    for (std::size_t i = 0; i < kUtilityCount; ++i) m.priors[i] += member.priors[i];
    cats.insert(member.categories.begin(), member.categories.end());
    m.description += (&member == members.data() ? " " : ", ") + member.label;
  }
  for (double& b : m.priors) b /= static_cast<double>(members.size());
  m.categories.assign(cats.begin(), cats.end());
  return m;
}

CategoryAliases::CategoryAliases(std::map<std::string, std::vector<std::string>> table) {
  for (auto& [k, v] : table) table_.emplace(lower(k), std::move(v));
}

CategoryAliases CategoryAliases::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("invalid alias table: ") + e.what());
  }
  if (!j.is_object()) throw ArgumentError("alias table must be a JSON object");
  std::map<std::string, std::vector<std::string>> table;
  for (const auto& [label, names] : j.items()) {
    if (!names.is_array()) throw ArgumentError("aliases of \"" + label + "\" must be an array");
    auto& out = table[label];
    for (const auto& n : names) {
      if (!n.is_string()) throw ArgumentError("aliases of \"" + label + "\" must be strings");
      out.push_back(n.get<std::string>());
    }
  }
  return CategoryAliases(std::move(table));
}

CategoryAliases CategoryAliases::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::vector<CategoryId> CategoryAliases::resolve(std::span<const std::string> labels, const Dataset& dataset) const {
  std::set<CategoryId> ids;
  for (const auto& label : labels) {
    auto it = table_.find(lower(label));
    if (it == table_.end()) {
      if (auto c = dataset.find_category(label)) ids.insert(*c);
      continue;
    }
    for (const auto& name : it->second)
      if (auto c = dataset.find_category(name)) ids.insert(*c);
  }
  return {ids.begin(), ids.end()};
}

}  // namespace likemind
