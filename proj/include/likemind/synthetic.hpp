#pragma once

#include <cstdint>
#include <string>

#include "likemind/dataset.hpp"

namespace likemind {

/// Parameters of the generated test city. Visitors belong to personas that
/// tie demographic buckets to favourite categories, hours of the day and a
/// home neighbourhood; check-ins come in short trips around that home.
struct SyntheticConfig {
  std::size_t pois = 5000;
  std::size_t visitors = 2000;
  std::size_t checkins = 50000;
  std::size_t neighbourhoods = 24;
  double city_radius_m = 4000.0;
  double neighbourhood_sigma_m = 350.0;
  double trip_radius_m = 400.0;
  std::size_t pool_size = 15;  // venues per (neighbourhood, persona) that visitors favour
  double missing_rating_share = 0.15;
  double second_category_share = 0.05;
  GeoPoint center{48.8566, 2.3522};
  std::uint64_t seed = 7;
};

struct SyntheticCity {
  std::string pois_jsonl;
  std::string users_jsonl;
  std::string checkins_jsonl;
};

SyntheticCity generate_city(const SyntheticConfig& config = {});

/// Generates and ingests through the regular JSON-lines loader.
Dataset load_synthetic(const SyntheticConfig& config = {}, const LoadConfig& load = {});

/// Writes pois.jsonl, users.jsonl and checkins.jsonl into `dir`.
void write_city(const SyntheticCity& city, const std::string& dir);

}  // namespace likemind
