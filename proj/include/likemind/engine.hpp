#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "likemind/geo.hpp"
#include "likemind/groups.hpp"
#include "likemind/mindsets.hpp"

namespace likemind {

/// Limit on the swap loop: either the wall-clock time limit or a fixed
/// number of proposed groups (reproducible). A zero proposal count runs
/// until every candidate has been proposed once.
struct Budget {
  enum class Mode { wall_clock, proposals };
  Mode mode = Mode::wall_clock;
  std::chrono::microseconds time_limit{100'000};
  std::size_t max_proposals = 0;

  static Budget wall_clock(std::chrono::microseconds limit) { return {Mode::wall_clock, limit, 0}; }
  static Budget proposals(std::size_t n) { return {Mode::proposals, {}, n}; }
  static Budget exhaustive() { return proposals(0); }
};

struct EngineParams {
  double r = 500.0;
  std::size_t k = 5;
  std::size_t k_prime = 5;
  double sigma = 0.01;
  Budget budget;
  MiningConfig mining;
  bool match_weekly = false;
  bool suppress_duplicates = true;
  double duplicate_threshold = 0.9;

  void validate() const;
};

struct MaximizeOptions {
  double sigma = 0.01;
  std::size_t k = 5;
  Budget budget;
  bool suppress_duplicates = true;
  double duplicate_threshold = 0.9;
};

struct MaximizeResult {
  std::vector<std::size_t> selected;  // candidate positions, best first
  std::vector<double> scores;         // parallel to selected
  double objective = 0.0;
  std::vector<double> accepted_objectives;  // seed objective, then one entry per accepted swap
  std::size_t survivors = 0;
  std::size_t proposals = 0;
  bool short_list = false;
  bool relevance_relaxed = false;
};

/// Score of one candidate group under the active mindset. Called at most
/// once per candidate by maximize().
using GroupScorer = std::function<double(std::size_t candidate)>;

/// Greedy swap search for k groups maximizing the summed group scores.
///
/// Candidates below the relevance threshold are dropped, the rest are
/// visited by support (largest first, then itemset order). The first k seed
/// the selection; each later candidate is offered against the selected
/// groups, weakest first, and replaces the first one whose removal strictly
/// raises the total. Stops when the budget runs out or every candidate has
/// been offered once. When nothing survives pruning the k largest groups are
/// returned with `relevance_relaxed` set.
MaximizeResult maximize(std::span<const Group> candidates, std::span<const PoiIndex> portfolio,
                        const MaximizeOptions& options, const GroupScorer& scorer);

struct StageTimings {
  double nearby_ms = 0.0;
  double checkins_ms = 0.0;
  double mining_ms = 0.0;
  double maximize_ms = 0.0;
  double total_ms() const noexcept { return nearby_ms + checkins_ms + mining_ms + maximize_ms; }
};

struct GroupSummary {
  std::string description;
  std::size_t support = 0;
  double score = 0.0;
  std::vector<std::string> pois;
};

struct IterationRecord {
  std::size_t index = 0;
  std::string mindset_label;
  EngineParams params;
  std::vector<GroupSummary> groups;
  double objective = 0.0;
  Timestamp timestamp = 0;
};

struct Recommendation {
  std::vector<Group> groups;  // display_pois filled, best first
  std::vector<double> group_scores;
  std::vector<GroupDescription> explanations;
  double objective = 0.0;
  bool relevance_relaxed = false;
  bool short_list = false;
  std::string diagnostic;
  std::size_t iteration = 0;
  std::size_t nearby_count = 0;
  std::size_t checkin_count = 0;
  std::size_t candidate_count = 0;
  std::size_t proposals = 0;
  std::vector<double> accepted_objectives;
  StageTimings timings;

  /// Every displayed POI, in group order, without duplicates.
  std::vector<PoiIndex> displayed_pois() const;
};

struct Session {
  std::string id;
  Context context;
  std::vector<PoiIndex> portfolio;  // bookmark order, no duplicates
  WeightVector weights = initial_weights();
  std::vector<IterationRecord> history;
  std::optional<Mindset> active_mindset;
  std::vector<PoiIndex> displayed;         // sorted; POIs of the latest recommendation
  std::vector<VisitorIndex> masked_visitors;  // sorted; excluded from mining
};

class Engine {
 public:
  explicit Engine(const Dataset& dataset, CategoryAliases aliases = {}, double grid_cell_m = 500.0);

  Session open_session(std::string id, const Context& context) const;

  /// One recommendation round for the session: neighbourhood, check-ins,
  /// group mining, mindset maximization and POI selection.
  Recommendation iterate(Session& session, const Mindset& mindset, const EngineParams& params) const;

  /// Adds a displayed POI to the portfolio and refreshes the weights.
  /// Returns false when the POI was already bookmarked.
  bool bookmark(Session& session, std::string_view poi_id) const;
  bool bookmark(Session& session, PoiIndex poi) const;

  UtilityEnv environment(const Session& session, const Mindset& mindset) const;

  const Dataset& dataset() const noexcept { return *dataset_; }
  const GridIndex& index() const noexcept { return index_; }
  const CategoryAliases& aliases() const noexcept { return aliases_; }

  void set_clock(std::function<Timestamp()> clock) { clock_ = std::move(clock); }

 private:
  const Dataset* dataset_;
  GridIndex index_;
  CategoryAliases aliases_;
  std::function<Timestamp()> clock_;
};

}  // namespace likemind
