#include "likemind/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace likemind {

std::string_view to_string(Strategy s) noexcept { return s == Strategy::optimal ? "optimal" : "random"; }
std::string_view to_string(BaselineKind b) noexcept {
  return b == BaselineKind::diversity ? "diversity" : "popularity";
}

Strategy parse_strategy(std::string_view s) {
  if (s == "random") return Strategy::random;
  if (s == "optimal") return Strategy::optimal;
  throw ArgumentError("strategy must be random or optimal, got " + std::string(s));
}

BaselineKind parse_baseline(std::string_view s) {
  if (s == "popularity") return BaselineKind::popularity;
  if (s == "diversity") return BaselineKind::diversity;
  throw ArgumentError("baseline must be popularity or diversity, got " + std::string(s));
}

void SimulationConfig::validate() const {
  if (sessions < 1) throw ArgumentError("at least one session is required");
  if (iterations < 1) throw ArgumentError("at least one iteration is required");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ArgumentError("theta must lie in [0,1]");
  if (!(r > 0)) throw ArgumentError("radius must be positive");
  engine.validate();
}

// --- metrics ----------------------------------------------------------------

double hr_iteration(std::span<const SessionTrace> traces, std::size_t n) {
  if (traces.empty() || n == 0) return 0.0;
  double sum = 0.0;
  for (const auto& t : traces) {
    if (t.iterations.size() < n) throw ArgumentError("trace shorter than the requested N");
    std::size_t hits = 0;
    for (std::size_t j = 0; j < n; ++j) hits += t.iterations[j].hit ? 1 : 0;
    sum += static_cast<double>(hits) / static_cast<double>(n);
  }
  return sum / static_cast<double>(traces.size());
}

double hr_session(std::span<const SessionTrace> traces, std::size_t n) {
  if (traces.empty() || n == 0) return 0.0;
  std::size_t sessions_hit = 0;
  for (const auto& t : traces) {
    if (t.iterations.size() < n) throw ArgumentError("trace shorter than the requested N");
    if (std::any_of(t.iterations.begin(), t.iterations.begin() + static_cast<std::ptrdiff_t>(n),
                    [](const IterationTrace& it) { return it.hit; }))
      ++sessions_hit;
  }
  return static_cast<double>(sessions_hit) / static_cast<double>(traces.size());
}

std::vector<HrPoint> hr_curve(std::span<const SessionTrace> traces, std::size_t max_n) {
  std::vector<HrPoint> out;
  for (std::size_t n = 1; n <= max_n; ++n) out.push_back({n, hr_iteration(traces, n), hr_session(traces, n)});
  return out;
}

// --- session building blocks --------------------------------------------------

std::vector<PoiIndex> build_eval_set(const Dataset& dataset, VisitorIndex user, const Context& context, double r,
                                     double horizon_hours) {
  const auto horizon = static_cast<Timestamp>(std::llround(horizon_hours * kSecondsPerHour));
  std::vector<PoiIndex> out;
  for (auto pos : dataset.checkins_of_visitor(user)) {
    const Checkin& c = dataset.checkins()[pos];
    const double d = distance(dataset.poi(c.poi).loc, context.loc);
    const Timestamp dt = c.ts - context.wall_time;
    if (d > 0.0 && d <= r && dt > 0 && dt <= horizon) out.push_back(c.poi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double demographic_cosine(const Group& g, const Visitor& user, const ItemDictionary& items) {
  if (g.demog_items.empty()) return 0.0;
  std::size_t dot = 0;
  for (ItemId i : g.demog_items) {
    const auto b = items.decode(i).demog;
    if (user.buckets[static_cast<std::size_t>(b.attribute)] == b.bucket) ++dot;
  }
  return static_cast<double>(dot) /
         (std::sqrt(static_cast<double>(g.demog_items.size())) * std::sqrt(static_cast<double>(kDemogCount)));
}

std::size_t select_group(std::span<const Group> groups, const Visitor& user, const ItemDictionary& items,
                         Strategy strategy, std::mt19937_64& rng) {
  if (groups.empty()) throw ArgumentError("no group to select from");
  if (strategy == Strategy::random) {
    std::uniform_int_distribution<std::size_t> pick(0, groups.size() - 1);
    return pick(rng);
  }
  std::size_t best = 0;
  double best_cos = demographic_cosine(groups[0], user, items);
  for (std::size_t i = 1; i < groups.size(); ++i) {
    const double c = demographic_cosine(groups[i], user, items);
    const bool better = c > best_cos ||
                        (c == best_cos && (groups[i].support > groups[best].support ||
                                           (groups[i].support == groups[best].support &&
                                            groups[i].itemset < groups[best].itemset)));
    if (better) {
      best = i;
      best_cos = c;
    }
  }
  return best;
}

Mindset select_mindset(const Engine& engine, const Session& session, std::span<const PoiIndex> previous_group_pois,
                       const std::optional<Mindset>& current, double theta, Strategy strategy,
                       std::mt19937_64& rng) {
  const auto& all = builtin_mindsets();
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  if (!current) return all[pick(rng)];
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < theta) return *current;
  if (strategy == Strategy::random || previous_group_pois.empty()) return all[pick(rng)];

  std::vector<const Poi*> pois;
  for (PoiIndex p : previous_group_pois) pois.push_back(&engine.dataset().poi(p));
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double s = score(all[i], pois, session.weights, engine.environment(session, all[i]));
    if (s > best_score) {
      best_score = s;
      best = i;
    }
  }
  return all[best];
}

std::vector<PoiIndex> baseline(const Engine& engine, const Context& context, double r, std::size_t n,
                               BaselineKind kind) {
  const Dataset& ds = engine.dataset();
  auto nearby = engine.index().query(context.loc, r);
  auto more_popular = [&](PoiIndex a, PoiIndex b) {
    const auto ca = ds.poi(a).total_checkins, cb = ds.poi(b).total_checkins;
    if (ca != cb) return ca > cb;
    return ds.poi(a).id < ds.poi(b).id;
  };
  std::sort(nearby.begin(), nearby.end(), more_popular);
  if (kind == BaselineKind::popularity || nearby.size() <= n) {
    if (nearby.size() > n) nearby.resize(n);
    return nearby;
  }

  // Greedy diversity: the candidate adding the largest total category
  // distance to the chosen set maximizes the mean pairwise distance of the
  // grown set. Candidates are scanned in popularity order, so ties keep the
  // more popular POI.
  std::vector<PoiIndex> chosen{nearby.front()};
  std::vector<double> gain(nearby.size(), 0.0);
  std::vector<bool> used(nearby.size(), false);
  used[0] = true;
  std::size_t last = 0;
  while (chosen.size() < n) {
    std::size_t best = nearby.size();
    for (std::size_t i = 0; i < nearby.size(); ++i) {
      if (used[i]) continue;
      gain[i] += jaccard_distance(ds.poi(nearby[i]).categories, ds.poi(nearby[last]).categories);
      if (best == nearby.size() || gain[i] > gain[best]) best = i;
    }
    used[best] = true;
    chosen.push_back(nearby[best]);
    last = best;
  }
  return chosen;
}

std::mt19937_64 session_rng(std::uint64_t seed, std::size_t session, RngStream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(session), static_cast<std::uint32_t>(session >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

SessionTrace sample_session(const Dataset& dataset, const SimulationConfig& config, std::mt19937_64& rng) {
  const auto visitors = dataset.visitors();
  if (visitors.empty() || dataset.checkins().empty()) throw Error("the dataset has no check-ins to simulate from");
  std::uniform_int_distribution<std::size_t> pick_user(0, visitors.size() - 1);
  SessionTrace trace;
  for (std::size_t attempt = 0;; ++attempt) {
    const auto user = static_cast<VisitorIndex>(pick_user(rng));
    const auto own = dataset.checkins_of_visitor(user);
    if (own.empty()) {
      if (attempt > 100000) throw Error("could not sample a user with check-ins");
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick_checkin(0, own.size() - 1);
    const Checkin& c = dataset.checkins()[own[pick_checkin(rng)]];
    trace.user = user;
    trace.context = Context::at(dataset.poi(c.poi).loc, c.ts);
    trace.zeta = build_eval_set(dataset, user, trace.context, config.r, config.horizon_hours);
    if (!trace.zeta.empty() || !config.require_ground_truth || attempt >= config.max_resamples) return trace;
  }
}

namespace {

bool intersects(std::span<const PoiIndex> recommended, std::span<const PoiIndex> zeta_sorted) {
  return std::any_of(recommended.begin(), recommended.end(),
                     [&](PoiIndex p) { return std::binary_search(zeta_sorted.begin(), zeta_sorted.end(), p); });
}

}  // namespace

namespace {

SessionTrace run_session(const Engine& engine, const SimulationConfig& config, const EngineParams& params,
                         std::size_t s) {
  const Dataset& ds = engine.dataset();
  auto sample_rng = session_rng(config.seed, s, RngStream::sampling);
  auto mindset_rng = session_rng(config.seed, s, RngStream::mindset);
  auto group_rng = session_rng(config.seed, s, RngStream::group);
  SessionTrace trace = sample_session(ds, config, sample_rng);
  Session session = engine.open_session("sim-" + std::to_string(s), trace.context);
  session.masked_visitors = {trace.user};

  std::optional<Mindset> current;
  std::vector<PoiIndex> previous_group_pois;
  for (std::size_t j = 0; j < config.iterations; ++j) {
    current = select_mindset(engine, session, previous_group_pois, current, config.theta, config.mindset_strategy,
                             mindset_rng);
    const Recommendation rec = engine.iterate(session, *current, params);
    IterationTrace it;
    it.mindset = current->label;
    it.recommended = rec.displayed_pois();
    it.hit = intersects(it.recommended, trace.zeta);
    it.relevance_relaxed = rec.relevance_relaxed;
    for (const auto& g : rec.groups)
      if (std::binary_search(g.members.begin(), g.members.end(), trace.user)) it.user_in_groups = true;

    previous_group_pois.clear();
    if (!rec.groups.empty()) {
      const std::size_t gi = select_group(rec.groups, ds.visitor(trace.user), ds.items(), config.group_strategy, group_rng);
      it.selected_group = gi;
      previous_group_pois = rec.groups[gi].display_pois;
      for (PoiIndex p : rec.groups[gi].display_pois) {
        if (std::find(session.portfolio.begin(), session.portfolio.end(), p) == session.portfolio.end()) {
          engine.bookmark(session, p);
          it.selected_poi = p;
          break;
        }
      }
    }
    trace.iterations.push_back(std::move(it));
  }
  return trace;
}

template <typename Fn>
std::vector<SessionTrace> run_sessions(const SimulationConfig& config, Fn&& one) {
  std::vector<SessionTrace> traces(config.sessions);
  std::size_t workers = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  workers = std::clamp<std::size_t>(workers, 1, config.sessions);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t s = next++; s < config.sessions; s = next++) {
      try {
        traces[s] = one(s);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.sessions;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return traces;
}

}  // namespace

std::vector<SessionTrace> simulate(const Engine& engine, const SimulationConfig& config) {
  config.validate();
  EngineParams params = config.engine;
  params.r = config.r;
  return run_sessions(config, [&](std::size_t s) { return run_session(engine, config, params, s); });
}

std::vector<SessionTrace> simulate_baseline(const Engine& engine, const SimulationConfig& config, BaselineKind kind) {
  config.validate();
  const std::size_t n = config.engine.k * config.engine.k_prime;
  return run_sessions(config, [&](std::size_t s) {
    auto rng = session_rng(config.seed, s, RngStream::sampling);
    SessionTrace trace = sample_session(engine.dataset(), config, rng);
    IterationTrace it;
    it.mindset = std::string(to_string(kind));
    it.recommended = baseline(engine, trace.context, config.r, n, kind);
    it.hit = intersects(it.recommended, trace.zeta);
    trace.iterations.assign(config.iterations, it);
    return trace;
  });
}

void write_csv_header(std::ostream& out) {
  out << "N,HR_I,HR_S,group_strategy,mindset_strategy,theta,seed,method\n";
}

void write_csv_rows(std::ostream& out, std::span<const HrPoint> curve, const SimulationConfig& config,
                    std::string_view method) {
  char buf[64];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", p.hr_iteration, p.hr_session);
    out << p.n << ',' << buf << ',' << to_string(config.group_strategy) << ','
        << to_string(config.mindset_strategy) << ',';
    std::snprintf(buf, sizeof buf, "%.4f", config.theta);
    out << buf << ',' << config.seed << ',' << method << '\n';
  }
}

}  // namespace likemind
