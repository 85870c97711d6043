#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "likemind/engine.hpp"
#include "likemind/simulator.hpp"
#include "likemind/synthetic.hpp"

namespace lmtest {

using namespace likemind;

inline bool close(double a, double b, double rel = 1e-9) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel * scale;
}

inline Dataset load_text(const std::string& pois, const std::string& users, const std::string& checkins,
                         const LoadConfig& config = {}) {
  std::istringstream p(pois), u(users), c(checkins);
  return Dataset::load({&p, &u, &c}, config);
}

/// Shared synthetic city, generated once per test binary.
inline const Dataset& city() {
  static const Dataset ds = load_synthetic();
  return ds;
}

// --- random fixtures --------------------------------------------------------

struct PoiFixture {
  std::vector<Poi> pois;
  UtilityEnv env;

  std::vector<const Poi*> pointers(const std::vector<std::size_t>& idx) const {
    std::vector<const Poi*> out;
    for (auto i : idx) out.push_back(&pois[i]);
    return out;
  }
};

inline PoiFixture random_pois(std::mt19937_64& rng, std::size_t n, std::size_t categories = 6) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> cat(0, static_cast<int>(categories) - 1);
  PoiFixture f;
  for (std::size_t i = 0; i < n; ++i) {
    Poi p;
    p.id = "p" + std::to_string(i);
    p.loc = {48.85 + 0.02 * u(rng), 2.33 + 0.03 * u(rng)};
    p.inserted = Date{std::chrono::days{13000 + static_cast<int>(2000 * u(rng))}};
    p.total_checkins = static_cast<std::uint64_t>(1000 * u(rng));
    p.radius_m = 10 + 190 * u(rng);
    p.rating = 5.0 * u(rng);
    const int nc = 1 + static_cast<int>(u(rng) * 2.5);
    std::set<CategoryId> cs;
    for (int c = 0; c < nc; ++c) cs.insert(static_cast<CategoryId>(cat(rng)));
    p.categories.assign(cs.begin(), cs.end());
    f.pois.push_back(std::move(p));
  }
  for (const auto& p : f.pois) {
    f.env.stats.max_poi_checkins = std::max(f.env.stats.max_poi_checkins, p.total_checkins);
    f.env.stats.max_radius_m = std::max(f.env.stats.max_radius_m, p.radius_m);
  }
  f.env.stats.max_poi_checkins = std::max<std::uint64_t>(f.env.stats.max_poi_checkins, 1);
  f.env.stats.city_area_m2 = 2.0e6 + 4.0e6 * u(rng);
  f.env.now = Date{std::chrono::days{15000 + static_cast<int>(500 * u(rng))}};
  for (std::size_t c = 0; c < categories; ++c)
    if (u(rng) < 0.3) f.env.categories_of_interest.push_back(static_cast<CategoryId>(c));
  for (std::size_t c = 0; c < categories; ++c)
    if (u(rng) < 0.25) f.env.portfolio_categories.push_back(static_cast<CategoryId>(c));
  return f;
}

inline std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t n, std::size_t max_size) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  std::uniform_int_distribution<std::size_t> size(1, std::min(n, max_size));
  idx.resize(size(rng));
  return idx;
}

// --- oracles: straight-line formulas on plain containers ---------------------

inline double set_jaccard(const std::set<CategoryId>& a, const std::set<CategoryId>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::set<CategoryId> uni = a;
  uni.insert(b.begin(), b.end());
  std::size_t inter = 0;
  for (auto x : a) inter += b.count(x);
  return static_cast<double>(inter) / static_cast<double>(uni.size());
}

inline std::set<CategoryId> cats(const std::vector<const Poi*>& ps) {
  std::set<CategoryId> s;
  for (auto* p : ps) s.insert(p->categories.begin(), p->categories.end());
  return s;
}

inline std::set<CategoryId> as_set(const std::vector<CategoryId>& v) { return {v.begin(), v.end()}; }

/// Jarvis march plus shoelace on locally projected coordinates.
inline double hull_area_oracle(const std::vector<GeoPoint>& pts) {
  if (pts.size() < 3) return 0.0;
  const double pi = std::acos(-1.0);
  double lat0 = 0;
  for (auto& p : pts) lat0 += p.lat;
  lat0 /= static_cast<double>(pts.size());
  struct P {
    double x, y;
  };
  std::vector<P> q;
  for (auto& p : pts)
    q.push_back({(p.lon - pts[0].lon) * pi / 180.0 * 6371000.0 * std::cos(lat0 * pi / 180.0),
                 (p.lat - pts[0].lat) * pi / 180.0 * 6371000.0});
  std::size_t start = 0;
  for (std::size_t i = 1; i < q.size(); ++i)
    if (q[i].x < q[start].x || (q[i].x == q[start].x && q[i].y < q[start].y)) start = i;
  std::vector<P> hull;
  std::size_t cur = start;
  do {
    hull.push_back(q[cur]);
    std::size_t next = (cur + 1) % q.size();
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double c = (q[next].x - q[cur].x) * (q[i].y - q[cur].y) - (q[next].y - q[cur].y) * (q[i].x - q[cur].x);
      const double dn = std::hypot(q[next].x - q[cur].x, q[next].y - q[cur].y);
      const double di = std::hypot(q[i].x - q[cur].x, q[i].y - q[cur].y);
      if (c < 0 || (c == 0 && di > dn)) next = i;
    }
    cur = next;
    if (hull.size() > q.size()) break;
  } while (cur != start);
  double a = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& u = hull[i];
    const auto& v = hull[(i + 1) % hull.size()];
    a += u.x * v.y - v.x * u.y;
  }
  return std::abs(a) / 2.0;
}

inline double utility_oracle(UtilityKind kind, const std::vector<const Poi*>& ps, const UtilityEnv& env) {
  if (ps.empty()) return 0.0;
  const double n = static_cast<double>(ps.size());
  double sum = 0;
  switch (kind) {
    case UtilityKind::popularity:
      for (auto* p : ps) sum += static_cast<double>(p->total_checkins);
      return std::min(1.0, sum / n / static_cast<double>(env.stats.max_poi_checkins));
    case UtilityKind::prestige:
      for (auto* p : ps) sum += p->rating;
      return sum / n / 5.0;
    case UtilityKind::recency: {
      for (auto* p : ps) sum += static_cast<double>(p->inserted.time_since_epoch().count());
      const double dy = (static_cast<double>(env.now.time_since_epoch().count()) - sum / n) / 365.0;
      return 1.0 / (1.0 + std::max(0.0, dy));
    }
    case UtilityKind::coverage: {
      if (ps.size() < 3) return 0.0;
      std::vector<GeoPoint> pts;
      for (auto* p : ps) pts.push_back(p->loc);
      return std::min(1.0, hull_area_oracle(pts) / env.stats.city_area_m2);
    }
    case UtilityKind::surprisingness:
      if (env.portfolio_categories.empty()) return 1.0;
      return 1.0 - set_jaccard(cats(ps), as_set(env.portfolio_categories));
    case UtilityKind::category:
      return set_jaccard(as_set(env.categories_of_interest), cats(ps));
    case UtilityKind::diversity: {
      if (ps.size() < 2) return 0.0;
      double pairs = 0;
      for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
          sum += 1.0 - set_jaccard(as_set(ps[i]->categories), as_set(ps[j]->categories));
          pairs += 1;
        }
      return sum / pairs;
    }
    case UtilityKind::size:
      for (auto* p : ps) sum += p->radius_m;
      return std::min(1.0, sum / n / env.stats.max_radius_m);
  }
  return 0.0;
}

inline double score_oracle(const Priors& b, const WeightVector& w, const UtilityValues& f) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < kUtilityCount; ++i) {
    num += w[i] * b[i] * f[i];
    den += w[i] * b[i];
  }
  return den > 0 ? num / den : 0.0;
}

/// Every closed itemset with support >= min_support and at most max_len
/// items, by subset enumeration over the item universe.
inline std::map<std::vector<ItemId>, std::size_t> closed_itemsets_oracle(
    const std::vector<std::vector<ItemId>>& transactions, std::size_t min_support, std::size_t max_len) {
  std::set<ItemId> universe;
  for (const auto& t : transactions) universe.insert(t.begin(), t.end());
  const std::vector<ItemId> items(universe.begin(), universe.end());
  const std::size_t m = items.size();
  std::map<std::vector<ItemId>, std::size_t> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<ItemId> set;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) set.push_back(items[i]);
    if (set.size() > max_len) continue;
    std::vector<const std::vector<ItemId>*> cover;
    for (const auto& t : transactions)
      if (std::includes(t.begin(), t.end(), set.begin(), set.end())) cover.push_back(&t);
    if (cover.size() < min_support) continue;
    // closed: the intersection of the covering transactions is the set itself
    std::vector<ItemId> inter = *cover.front();
    for (auto* t : cover) {
      std::vector<ItemId> next;
      std::set_intersection(inter.begin(), inter.end(), t->begin(), t->end(), std::back_inserter(next));
      inter = std::move(next);
    }
    if (inter == set) out.emplace(set, cover.size());
  }
  return out;
}

/// Hit ratios straight from per-session hit flags.
inline double hr_i_oracle(const std::vector<std::vector<bool>>& hits, std::size_t n) {
  double total = 0;
  for (const auto& s : hits) {
    double h = 0;
    for (std::size_t i = 0; i < n && i < s.size(); ++i) h += s[i] ? 1 : 0;
    total += h / static_cast<double>(n);
  }
  return total / static_cast<double>(hits.size());
}

inline double hr_s_oracle(const std::vector<std::vector<bool>>& hits, std::size_t n) {
  double total = 0;
  for (const auto& s : hits) {
    bool any = false;
    for (std::size_t i = 0; i < n && i < s.size(); ++i) any = any || s[i];
    total += any ? 1 : 0;
  }
  return total / static_cast<double>(hits.size());
}

inline std::vector<SessionTrace> traces_from_hits(const std::vector<std::vector<bool>>& hits) {
  std::vector<SessionTrace> out;
  for (const auto& s : hits) {
    SessionTrace t;
    for (bool h : s) {
      IterationTrace it;
      it.hit = h;
      t.iterations.push_back(it);
    }
    out.push_back(std::move(t));
  }
  return out;
}

// --- random mining and optimizer inputs ---------------------------------------

inline std::vector<std::vector<ItemId>> random_transactions(std::mt19937_64& rng, std::size_t max_tx, std::size_t max_items) {
  std::uniform_int_distribution<std::size_t> ntx(1, max_tx), nitems(3, max_items);
  std::uniform_real_distribution<double> u(0, 1);
  const std::size_t m = nitems(rng);
  const double density = 0.2 + 0.5 * u(rng);
  std::vector<std::vector<ItemId>> out(ntx(rng));
  for (auto& t : out)
    for (ItemId i = 0; i < m; ++i)
      if (u(rng) < density) t.push_back(i);
  return out;
}

struct Pool {
  std::vector<Group> groups;
  std::vector<double> scores;
};

inline Pool random_pool(std::mt19937_64& rng, std::size_t max_groups) {
  std::uniform_int_distribution<std::size_t> n(2, max_groups), support(2, 9), item(0, 30);
  std::uniform_real_distribution<double> u(0, 1);
  Pool pool;
  const std::size_t count = n(rng);
  std::set<std::vector<ItemId>> used;
  while (pool.groups.size() < count) {
    Group g;
    std::set<ItemId> items;
    for (int i = 0; i < 3; ++i) items.insert(static_cast<ItemId>(item(rng)));
    g.itemset.assign(items.begin(), items.end());
    if (!used.insert(g.itemset).second) continue;
    g.support = support(rng);
    for (VisitorIndex v = 0; v < g.support; ++v) g.members.push_back(static_cast<VisitorIndex>(item(rng) * 10 + v));
    std::sort(g.members.begin(), g.members.end());
    g.members.erase(std::unique(g.members.begin(), g.members.end()), g.members.end());
    g.support = g.members.size();
    pool.groups.push_back(std::move(g));
    pool.scores.push_back(u(rng));
  }
  return pool;
}

/// Best sum of two distinct scores.
inline double best_pair(const std::vector<double>& s, const std::vector<std::size_t>& allowed) {
  double best = 0;
  for (std::size_t a = 0; a < allowed.size(); ++a)
    for (std::size_t b = a + 1; b < allowed.size(); ++b) best = std::max(best, s[allowed[a]] + s[allowed[b]]);
  return best;
}

}  // namespace lmtest
