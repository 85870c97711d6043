#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace likemind {

using PoiIndex = std::uint32_t;
using VisitorIndex = std::uint32_t;
using CategoryId = std::uint32_t;
using ItemId = std::uint32_t;

// Seconds since the Unix epoch, interpreted as wall-clock time of the
// dataset's city (the configured UTC offset is already applied).
using Timestamp = std::int64_t;
using Date = std::chrono::sys_days;

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr Timestamp kSecondsPerHour = 3600;
inline constexpr Timestamp kSecondsPerDay = 86400;

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  bool valid() const noexcept {
    return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
  }
  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

enum class Hourly : std::uint8_t { morning, afternoon, evening, night };
enum class Weekly : std::uint8_t { weekday, weekend };

inline constexpr std::size_t kHourlyCount = 4;
inline constexpr std::size_t kWeeklyCount = 2;

struct TimeCategory {
  Hourly hourly = Hourly::morning;
  Weekly weekly = Weekly::weekday;
  friend bool operator==(const TimeCategory&, const TimeCategory&) = default;
};

enum class DemogAttribute : std::uint8_t { items, photos, friends, checkins, places };
enum class Bucket : std::uint8_t { very_few, few, some, many };

inline constexpr std::size_t kDemogCount = 5;
inline constexpr std::size_t kBucketCount = 4;

inline constexpr std::array<DemogAttribute, kDemogCount> kDemogAttributes = {
    DemogAttribute::items, DemogAttribute::photos, DemogAttribute::friends,
    DemogAttribute::checkins, DemogAttribute::places};

struct DemographicBucket {
  DemogAttribute attribute = DemogAttribute::items;
  Bucket bucket = Bucket::very_few;
  friend bool operator==(const DemographicBucket&, const DemographicBucket&) = default;
};

std::string_view to_string(Hourly h) noexcept;
std::string_view to_string(Weekly w) noexcept;
std::string_view to_string(DemogAttribute a) noexcept;
std::string_view to_string(Bucket b) noexcept;

DemogAttribute parse_demog_attribute(std::string_view name);
Hourly parse_hourly(std::string_view name);

// Error hierarchy. Every failure surfaced by the library derives from Error so
// callers (CLI, HTTP layer) can map categories to exit codes / status codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IngestError : public Error {
 public:
  IngestError(std::string source, std::size_t line, const std::string& what);
  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class ConflictError : public Error {
 public:
  using Error::Error;
};

}  // namespace likemind
