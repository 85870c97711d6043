#include "likemind/engine.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace likemind {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool support_order(const Group& a, const Group& b) {
  if (a.support != b.support) return a.support > b.support;
  return a.itemset < b.itemset;
}

double member_jaccard(const Group& a, const Group& b) {
  return jaccard_similarity<VisitorIndex>(a.members, b.members);
}

std::vector<const Poi*> resolve(const Dataset& ds, std::span<const PoiIndex> ids) {
  std::vector<const Poi*> out;
  out.reserve(ids.size());
  for (PoiIndex p : ids) out.push_back(&ds.poi(p));
  return out;
}

}  // namespace

void EngineParams::validate() const {
  if (!(r > 0)) throw ArgumentError("radius r must be positive");
  if (k < 1) throw ArgumentError("k must be at least 1");
  if (k_prime < 1) throw ArgumentError("k' must be at least 1");
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw ArgumentError("sigma must lie in [0,1]");
  if (budget.mode == Budget::Mode::wall_clock && budget.time_limit.count() <= 0)
    throw ArgumentError("time limit must be positive");
  if (mining.min_support < 2) throw ArgumentError("minimum support must be at least 2");
}

// --- maximize ---------------------------------------------------------------

MaximizeResult maximize(std::span<const Group> candidates, std::span<const PoiIndex> portfolio,
                        const MaximizeOptions& options, const GroupScorer& scorer) {
  if (options.k < 1) throw ArgumentError("k must be at least 1");
  const auto start = Clock::now();
  MaximizeResult res;

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (relevance(candidates[i], portfolio) >= options.sigma) order.push_back(i);
  res.survivors = order.size();
  if (order.empty() && !candidates.empty()) {
    res.relevance_relaxed = true;
    order.resize(candidates.size());
    std::iota(order.begin(), order.end(), 0);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return support_order(candidates[a], candidates[b]); });

  std::unordered_map<std::size_t, double> cache;
  auto score_of = [&](std::size_t i) {
    auto it = cache.find(i);
    if (it != cache.end()) return it->second;
    const double s = scorer(i);
    cache.emplace(i, s);
    return s;
  };

  // seeding, optionally skipping near-duplicates of groups already chosen
  std::vector<std::size_t> chosen;
  std::vector<bool> seen(candidates.size(), false);
  for (std::size_t i : order) {
    if (chosen.size() == options.k) break;
    bool dup = false;
    if (options.suppress_duplicates) {
      for (std::size_t c : chosen)
        if (member_jaccard(candidates[i], candidates[c]) > options.duplicate_threshold) {
          dup = true;
          break;
        }
    }
    if (dup) continue;
    chosen.push_back(i);
    seen[i] = true;
  }
  for (std::size_t i : order) {
    if (chosen.size() == options.k) break;
    if (!seen[i]) {
      chosen.push_back(i);
      seen[i] = true;
    }
  }
  res.short_list = chosen.size() < options.k;

  auto total = [&](const std::vector<std::size_t>& set) {
    double sum = 0.0;
    for (std::size_t i : set) sum += score_of(i);
    return sum;
  };
  double objective = total(chosen);
  res.accepted_objectives.push_back(objective);

  if (!res.relevance_relaxed) {
    auto exhausted = [&] {
      if (options.budget.mode == Budget::Mode::wall_clock) return Clock::now() - start >= options.budget.time_limit;
      return options.budget.max_proposals != 0 && res.proposals >= options.budget.max_proposals;
    };
    for (std::size_t out : order) {
      if (seen[out]) continue;
      if (exhausted()) break;
      seen[out] = true;
      ++res.proposals;
      // weakest selected group first
      std::vector<std::size_t> by_score = chosen;
      std::stable_sort(by_score.begin(), by_score.end(),
                       [&](std::size_t a, std::size_t b) { return score_of(a) < score_of(b); });
      for (std::size_t in : by_score) {
        std::vector<std::size_t> next = chosen;
        *std::find(next.begin(), next.end(), in) = out;
        const double candidate_total = total(next);
        if (candidate_total > objective) {
          chosen = std::move(next);
          objective = candidate_total;
          res.accepted_objectives.push_back(objective);
          break;
        }
      }
    }
  }

  std::stable_sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
    const double sa = score_of(a), sb = score_of(b);
    if (sa != sb) return sa > sb;
    return support_order(candidates[a], candidates[b]);
  });
  res.selected = chosen;
  for (std::size_t i : chosen) res.scores.push_back(score_of(i));
  res.objective = objective;
  return res;
}

// --- engine -----------------------------------------------------------------

std::vector<PoiIndex> Recommendation::displayed_pois() const {
  std::vector<PoiIndex> out;
  for (const auto& g : groups)
    for (PoiIndex p : g.display_pois)
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  return out;
}

Engine::Engine(const Dataset& dataset, CategoryAliases aliases, double grid_cell_m)
    : dataset_(&dataset), index_(dataset, grid_cell_m), aliases_(std::move(aliases)), clock_([] {
        return static_cast<Timestamp>(
            std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
                .count());
      }) {}

Session Engine::open_session(std::string id, const Context& context) const {
  Session s;
  s.id = std::move(id);
  s.context = context;
  return s;
}

UtilityEnv Engine::environment(const Session& session, const Mindset& mindset) const {
  UtilityEnv env;
  env.stats = dataset_->stats();
  env.portfolio_categories = categories_of(resolve(*dataset_, session.portfolio));
  env.categories_of_interest = aliases_.resolve(mindset.categories, *dataset_);
  env.now = date_of(session.context.wall_time);
  return env;
}

Recommendation Engine::iterate(Session& session, const Mindset& mindset, const EngineParams& params) const {
  params.validate();
  const Dataset& ds = *dataset_;
  Recommendation rec;
  rec.iteration = session.history.size() + 1;

  auto t = Clock::now();
  const auto nearby = index_.query(session.context.loc, params.r);
  rec.timings.nearby_ms = ms_since(t);
  rec.nearby_count = nearby.size();

  t = Clock::now();
  CheckinFilter filter{session.context.time.hourly, std::nullopt, session.masked_visitors};
  if (params.match_weekly) filter.weekly = session.context.time.weekly;
  const auto checkins = checkins_of(ds, nearby, filter);
  rec.timings.checkins_ms = ms_since(t);
  rec.checkin_count = checkins.size();

  t = Clock::now();
  std::vector<Group> candidates;
  if (!checkins.empty()) candidates = mine_groups(build_transactions(ds, checkins), ds.items(), params.mining);
  rec.timings.mining_ms = ms_since(t);
  rec.candidate_count = candidates.size();

  t = Clock::now();
  session.active_mindset = mindset;
  const UtilityEnv env = environment(session, mindset);
  const auto portfolio = resolve(ds, session.portfolio);
  session.weights = update_weights(portfolio, env);

  if (nearby.empty()) {
    rec.diagnostic = "no POI within the radius; widen radius";
  } else if (candidates.empty()) {
    rec.diagnostic = "no look-alike group found; widen radius";
  } else {
    const VisitIndex visits(checkins);
    std::vector<std::optional<std::vector<PoiIndex>>> display(candidates.size());
    auto display_of = [&](std::size_t i) -> const std::vector<PoiIndex>& {
      if (!display[i]) display[i] = top_pois(candidates[i], params.k_prime, visits, ds);
      return *display[i];
    };
    const GroupScorer scorer = [&](std::size_t i) {
      return score(mindset, resolve(ds, display_of(i)), session.weights, env);
    };
    MaximizeOptions opts{params.sigma, params.k, params.budget, params.suppress_duplicates,
                         params.duplicate_threshold};
    const auto result = maximize(candidates, session.portfolio, opts, scorer);
    for (std::size_t j = 0; j < result.selected.size(); ++j) {
      Group g = candidates[result.selected[j]];
      g.display_pois = display_of(result.selected[j]);
      rec.explanations.push_back(describe(g, ds));
      rec.groups.push_back(std::move(g));
      rec.group_scores.push_back(result.scores[j]);
    }
    rec.objective = result.objective;
    rec.relevance_relaxed = result.relevance_relaxed;
    rec.short_list = result.short_list;
    rec.proposals = result.proposals;
    rec.accepted_objectives = result.accepted_objectives;
    if (rec.relevance_relaxed) rec.diagnostic = "no group reaches the relevance threshold; relevance relaxed";
  }
  rec.timings.maximize_ms = ms_since(t);

  auto displayed = rec.displayed_pois();
  std::sort(displayed.begin(), displayed.end());
  session.displayed = std::move(displayed);

  IterationRecord record;
  record.index = rec.iteration;
  record.mindset_label = mindset.label;
  record.params = params;
  record.objective = rec.objective;
  record.timestamp = clock_();
  for (std::size_t j = 0; j < rec.groups.size(); ++j) {
    GroupSummary s;
    s.description = rec.explanations[j].text;
    s.support = rec.groups[j].support;
    s.score = rec.group_scores[j];
    for (PoiIndex p : rec.groups[j].display_pois) s.pois.push_back(ds.poi(p).id);
    record.groups.push_back(std::move(s));
  }
  session.history.push_back(std::move(record));
  return rec;
}

bool Engine::bookmark(Session& session, std::string_view poi_id) const {
  auto p = dataset_->find_poi(poi_id);
  if (!p) throw NotFoundError("unknown POI " + std::string(poi_id));
  return bookmark(session, *p);
}

bool Engine::bookmark(Session& session, PoiIndex poi) const {
  if (poi >= dataset_->pois().size()) throw NotFoundError("unknown POI index");
  if (std::find(session.portfolio.begin(), session.portfolio.end(), poi) != session.portfolio.end()) return false;
  if (!std::binary_search(session.displayed.begin(), session.displayed.end(), poi))
    throw ConflictError("POI " + dataset_->poi(poi).id + " was not part of the latest recommendation");
  session.portfolio.push_back(poi);
  const Mindset m = session.active_mindset.value_or(builtin_mindsets().front());
  session.weights = update_weights(resolve(*dataset_, session.portfolio), environment(session, m));
  return true;
}

}  // namespace likemind
