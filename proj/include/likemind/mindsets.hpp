#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "likemind/utilities.hpp"

namespace likemind {

using Priors = UtilityValues;
using WeightVector = UtilityValues;

/// A labelled intent: priors over the utility family plus the category
/// labels the `category` utility compares against.
struct Mindset {
  std::string key;  // "m1".."m7" for built-ins, empty for custom mindsets
  std::string label;
  std::string description;
  Priors priors{};
  std::vector<std::string> categories;

  double prior(UtilityKind k) const noexcept { return priors[static_cast<std::size_t>(k)]; }
};

const std::vector<Mindset>& builtin_mindsets();
/// Looks a built-in up by label ("me time") or key ("m4"), case-insensitive.
std::optional<Mindset> find_builtin_mindset(std::string_view label_or_key);

inline WeightVector initial_weights() {
  WeightVector w;
  w.fill(1.0);
  return w;
}

/// Weighted mean of the utility values; zero when every weight·prior is zero.
double score(const Priors& priors, const WeightVector& weights, const UtilityValues& values) noexcept;
double score(const Mindset& m, PoiSet pois, const WeightVector& weights, const UtilityEnv& env);

/// Per-utility weights from the bookmarked POIs. The portfolio categories
/// of `env` are replaced by those of `portfolio`, so the surprisingness
/// weight of a non-empty portfolio is always zero.
WeightVector update_weights(PoiSet portfolio, const UtilityEnv& env);

/// Custom mindset whose priors are the utilities of `pois`, rescaled to sum
/// to one. Category labels are the dataset names of the POIs' categories.
Mindset create_from_pois(std::string label, PoiSet pois, const UtilityEnv& env, const Dataset& dataset);

/// Per-utility mean of the members' priors; categories are unioned.
Mindset combine(std::string label, std::span<const Mindset> members);

/// Maps mindset category labels to dataset category names. Labels without
/// an entry resolve to the dataset category of the same name.
class CategoryAliases {
 public:
  CategoryAliases() = default;
  explicit CategoryAliases(std::map<std::string, std::vector<std::string>> table);

  static CategoryAliases from_json_text(const std::string& text);
  static CategoryAliases from_file(const std::string& path);

  std::vector<CategoryId> resolve(std::span<const std::string> labels, const Dataset& dataset) const;
  const std::map<std::string, std::vector<std::string>>& table() const noexcept { return table_; }

 private:
  std::map<std::string, std::vector<std::string>> table_;
};

}  // namespace likemind
