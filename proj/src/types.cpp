#include "likemind/types.hpp"

#include <string>

namespace likemind {

std::string_view to_string(Hourly h) noexcept {
  switch (h) {
    case Hourly::morning: return "morning";
    case Hourly::afternoon: return "afternoon";
    case Hourly::evening: return "evening";
    case Hourly::night: return "night";
  }
  return "?";
}

std::string_view to_string(Weekly w) noexcept {
  return w == Weekly::weekend ? "weekend" : "weekday";
}

std::string_view to_string(DemogAttribute a) noexcept {
  switch (a) {
    case DemogAttribute::items: return "items";
    case DemogAttribute::photos: return "photos";
    case DemogAttribute::friends: return "friends";
    case DemogAttribute::checkins: return "check-ins";
    case DemogAttribute::places: return "places";
  }
  return "?";
}

std::string_view to_string(Bucket b) noexcept {
  switch (b) {
    case Bucket::very_few: return "very few";
    case Bucket::few: return "few";
    case Bucket::some: return "some";
    case Bucket::many: return "many";
  }
  return "?";
}

DemogAttribute parse_demog_attribute(std::string_view name) {
  for (auto a : kDemogAttributes) {
    if (to_string(a) == name) return a;
  }
  if (name == "checkins") return DemogAttribute::checkins;
  throw ArgumentError("unknown demographic attribute: " + std::string(name));
}

Hourly parse_hourly(std::string_view name) {
  for (auto h : {Hourly::morning, Hourly::afternoon, Hourly::evening, Hourly::night}) {
    if (to_string(h) == name) return h;
  }
  throw ArgumentError("unknown hourly category: " + std::string(name));
}

IngestError::IngestError(std::string source, std::size_t line, const std::string& what)
    : Error(source + ":" + std::to_string(line) + ": " + what), source_(std::move(source)), line_(line) {}

}  // namespace likemind
