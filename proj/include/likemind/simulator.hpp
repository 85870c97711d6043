#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "likemind/engine.hpp"

namespace likemind {

enum class Strategy { random, optimal };
enum class BaselineKind { popularity, diversity };

std::string_view to_string(Strategy s) noexcept;
std::string_view to_string(BaselineKind b) noexcept;
Strategy parse_strategy(std::string_view s);
BaselineKind parse_baseline(std::string_view s);

struct SimulationConfig {
  std::size_t sessions = 100;
  std::size_t iterations = 10;
  double r = 500.0;
  Strategy group_strategy = Strategy::random;
  Strategy mindset_strategy = Strategy::random;
  double theta = 0.5;
  std::uint64_t seed = 1;
  EngineParams engine = [] {
    EngineParams p;
    p.budget = Budget::exhaustive();
    return p;
  }();
  double horizon_hours = 48.0;
  bool require_ground_truth = true;  // redraw (user, check-in) while the ground truth is empty
  std::size_t max_resamples = 1000;
  std::size_t threads = 1;  // 0 = hardware concurrency; results do not depend on it

  void validate() const;
};

struct IterationTrace {
  std::string mindset;
  std::vector<PoiIndex> recommended;
  bool hit = false;
  std::optional<std::size_t> selected_group;
  std::optional<PoiIndex> selected_poi;
  bool user_in_groups = false;  // the session's own visitor showed up in a group
  bool relevance_relaxed = false;
};

struct SessionTrace {
  VisitorIndex user = 0;
  Context context;
  std::vector<PoiIndex> zeta;
  std::vector<IterationTrace> iterations;
};

struct HrPoint {
  std::size_t n = 0;
  double hr_iteration = 0.0;
  double hr_session = 0.0;
};

/// Mean over sessions of the fraction of hit iterations among the first n.
double hr_iteration(std::span<const SessionTrace> traces, std::size_t n);
/// Fraction of sessions with at least one hit among the first n iterations.
double hr_session(std::span<const SessionTrace> traces, std::size_t n);
std::vector<HrPoint> hr_curve(std::span<const SessionTrace> traces, std::size_t max_n);

/// POIs the user checked in at within (0, r] of the context location and
/// within the horizon after the context time, sorted.
std::vector<PoiIndex> build_eval_set(const Dataset& dataset, VisitorIndex user, const Context& context, double r,
                                     double horizon_hours = 48.0);

double demographic_cosine(const Group& g, const Visitor& user, const ItemDictionary& items);

std::size_t select_group(std::span<const Group> groups, const Visitor& user, const ItemDictionary& items,
                         Strategy strategy, std::mt19937_64& rng);

/// Picks the next mindset. Keeps `current` with probability theta; otherwise
/// draws uniformly (random) or takes the built-in scoring highest on
/// `previous_group_pois` (optimal). Without a current mindset or previous
/// group POIs the draw is uniform.
Mindset select_mindset(const Engine& engine, const Session& session, std::span<const PoiIndex> previous_group_pois,
                       const std::optional<Mindset>& current, double theta, Strategy strategy,
                       std::mt19937_64& rng);

std::vector<PoiIndex> baseline(const Engine& engine, const Context& context, double r, std::size_t n,
                               BaselineKind kind);

/// Independent random streams of one session, so that changing one choice
/// strategy leaves the draws of the others untouched.
enum class RngStream : std::uint32_t { sampling = 0, mindset = 1, group = 2 };

/// Deterministic generator derived from (seed, session index, stream).
std::mt19937_64 session_rng(std::uint64_t seed, std::size_t session, RngStream stream = RngStream::sampling);

/// Draws the session's user and context (same draw for engine and baselines).
/// Users without check-ins are always redrawn.
SessionTrace sample_session(const Dataset& dataset, const SimulationConfig& config, std::mt19937_64& rng);

std::vector<SessionTrace> simulate(const Engine& engine, const SimulationConfig& config);
std::vector<SessionTrace> simulate_baseline(const Engine& engine, const SimulationConfig& config, BaselineKind kind);

void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, std::span<const HrPoint> curve, const SimulationConfig& config,
                    std::string_view method);

}  // namespace likemind
