#include "likemind/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace likemind {

// --- transactions -----------------------------------------------------------

std::vector<Transaction> build_transactions(const Dataset& dataset, std::span<const Checkin> checkins) {
  const auto& dict = dataset.items();
  std::map<VisitorIndex, std::vector<ItemId>> by_visitor;
  for (const auto& c : checkins) {
    auto& items = by_visitor[c.visitor];
    const Poi& p = dataset.poi(c.poi);
    const TimeCategory tc = time_category(c.ts);
    items.push_back(dict.poi(c.poi));
    for (CategoryId cat : p.categories) {
      items.push_back(dict.category(cat));
      items.push_back(dict.category_hourly(cat, tc.hourly));
      items.push_back(dict.category_weekly(cat, tc.weekly));
    }
  }
  std::vector<Transaction> out;
  out.reserve(by_visitor.size());
  for (auto& [v, items] : by_visitor) {
    const Visitor& visitor = dataset.visitor(v);
    for (std::size_t a = 0; a < kDemogCount; ++a)
      items.push_back(dict.demographic({static_cast<DemogAttribute>(a), visitor.buckets[a]}));
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    out.push_back({v, std::move(items)});
  }
  return out;
}

// --- closed itemset mining ---------------------------------------------------
//
// Prefix-preserving closure extension (LCM). Every closed itemset Q other
// than the closure of the empty set has exactly one parent P from which it is
// reached by adding an item e > core(P) and closing, with Q and P agreeing on
// all items below e. Children are supersets of their parent, so the length
// bound prunes whole subtrees.

namespace {

class ClosedMiner {
 public:
  ClosedMiner(std::span<const std::vector<ItemId>> transactions, const MiningConfig& config)
      : config_(config) {
    // keep frequent items only, relabelled densely in ItemId order
    std::map<ItemId, std::size_t> freq;
    for (const auto& t : transactions)
      for (ItemId i : t) ++freq[i];
    std::map<ItemId, std::uint32_t> local;
    for (const auto& [item, n] : freq) {
      if (n >= config.min_support) {
        local.emplace(item, static_cast<std::uint32_t>(global_.size()));
        global_.push_back(item);
      }
    }
    trans_.reserve(transactions.size());
    for (const auto& t : transactions) {
      std::vector<std::uint32_t> row;
      for (ItemId i : t)
        if (auto it = local.find(i); it != local.end()) row.push_back(it->second);
      std::sort(row.begin(), row.end());
      trans_.push_back(std::move(row));
    }
    counts_.assign(global_.size(), 0);
  }

  std::vector<ClosedItemset> run() {
    std::vector<std::uint32_t> all(trans_.size());
    std::iota(all.begin(), all.end(), 0u);
    if (all.size() >= config_.min_support) {
      auto closure = close(all);
      if (closure.size() <= config_.max_itemset_len) expand(closure, all, -1);
    }
    std::sort(out_.begin(), out_.end(), [](const ClosedItemset& a, const ClosedItemset& b) {
      if (a.tids.size() != b.tids.size()) return a.tids.size() > b.tids.size();
      return a.items < b.items;
    });
    return std::move(out_);
  }

 private:
  // Items present in every transaction of `tids`.
  std::vector<std::uint32_t> close(const std::vector<std::uint32_t>& tids) {
    std::vector<std::uint32_t> touched;
    for (auto t : tids)
      for (auto i : trans_[t])
        if (counts_[i]++ == 0) touched.push_back(i);
    std::vector<std::uint32_t> closure;
    for (auto i : touched) {
      if (counts_[i] == tids.size()) closure.push_back(i);
      counts_[i] = 0;
    }
    std::sort(closure.begin(), closure.end());
    return closure;
  }

  void emit(const std::vector<std::uint32_t>& items, const std::vector<std::uint32_t>& tids) {
    if (items.empty()) return;
    if (out_.size() >= config_.max_groups)
      throw Error("group mining produced more than " + std::to_string(config_.max_groups) +
                  " itemsets; use a smaller radius or a shorter itemset length");
    ClosedItemset c;
    c.items.reserve(items.size());
    for (auto i : items) c.items.push_back(global_[i]);
    c.tids = tids;
    out_.push_back(std::move(c));
  }

  void expand(const std::vector<std::uint32_t>& closed, const std::vector<std::uint32_t>& tids, long core) {
    emit(closed, tids);
    if (closed.size() >= config_.max_itemset_len) return;

    // occurrence deliver: tids of `tids` containing each candidate item
    std::map<std::uint32_t, std::vector<std::uint32_t>> occ;
    for (auto t : tids)
      for (auto i : trans_[t])
        if (static_cast<long>(i) > core) occ[i].push_back(t);

    for (auto& [e, sub] : occ) {
      if (sub.size() < config_.min_support) continue;
      if (std::binary_search(closed.begin(), closed.end(), e)) continue;
      auto child = close(sub);
      // prefix preservation: no new item below e
      bool ok = true;
      for (auto i : child) {
        if (i >= e) break;
        if (!std::binary_search(closed.begin(), closed.end(), i)) {
          ok = false;
          break;
        }
      }
      if (!ok || child.size() > config_.max_itemset_len) continue;
      expand(child, sub, static_cast<long>(e));
    }
  }

  MiningConfig config_;
  std::vector<ItemId> global_;
  std::vector<std::vector<std::uint32_t>> trans_;
  std::vector<std::size_t> counts_;
  std::vector<ClosedItemset> out_;
};

}  // namespace

std::vector<ClosedItemset> mine_closed_itemsets(std::span<const std::vector<ItemId>> transactions,
                                                const MiningConfig& config) {
  if (config.min_support < 2) throw ArgumentError("minimum support must be at least 2");
  if (config.max_itemset_len == 0) throw ArgumentError("maximum itemset length must be positive");
  if (transactions.size() > config.max_transactions)
    throw Error("too many transactions (" + std::to_string(transactions.size()) + " > " +
                std::to_string(config.max_transactions) + "); use a smaller radius");
  for (const auto& t : transactions)
    if (!std::is_sorted(t.begin(), t.end()) || std::adjacent_find(t.begin(), t.end()) != t.end())
      throw ArgumentError("transaction items must be sorted and unique");
  return ClosedMiner(transactions, config).run();
}

std::vector<Group> mine_groups(std::span<const Transaction> transactions, const ItemDictionary& items,
                               const MiningConfig& config) {
  std::vector<std::vector<ItemId>> rows;
  rows.reserve(transactions.size());
  for (const auto& t : transactions) rows.push_back(t.items);
  auto closed = mine_closed_itemsets(rows, config);

  std::vector<Group> groups;
  groups.reserve(closed.size());
  for (auto& c : closed) {
    Group g;
    g.support = c.tids.size();
    g.members.reserve(c.tids.size());
    for (auto t : c.tids) g.members.push_back(transactions[t].visitor);
    std::sort(g.members.begin(), g.members.end());
    for (ItemId i : c.items) {
      const auto payload = items.decode(i);
      switch (payload.kind) {
        case ItemKind::demographic: g.demog_items.push_back(i); break;
        case ItemKind::poi:
          g.poi_items.push_back(i);
          g.pois.push_back(payload.poi);
          break;
        case ItemKind::category: g.category_items.push_back(i); break;
        case ItemKind::category_hourly:
        case ItemKind::category_weekly: g.time_items.push_back(i); break;
      }
    }
    g.itemset = std::move(c.items);
    groups.push_back(std::move(g));
  }
  return groups;
}

double relevance(const Group& g, std::span<const PoiIndex> portfolio) {
  if (portfolio.empty()) return 1.0;
  std::size_t shared = 0;
  for (PoiIndex p : portfolio)
    if (std::binary_search(g.pois.begin(), g.pois.end(), p)) ++shared;
  return static_cast<double>(shared) / static_cast<double>(portfolio.size());
}

// --- display POIs -----------------------------------------------------------

VisitIndex::VisitIndex(std::span<const Checkin> checkins) {
  std::vector<std::pair<VisitorIndex, PoiIndex>> pairs;
  pairs.reserve(checkins.size());
  for (const auto& c : checkins) pairs.emplace_back(c.visitor, c.poi);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (const auto& [v, p] : pairs) {
    if (visitors_.empty() || visitors_.back() != v) {
      visitors_.push_back(v);
      offsets_.push_back(static_cast<std::uint32_t>(pois_.size()));
    }
    pois_.push_back(p);
  }
  offsets_.push_back(static_cast<std::uint32_t>(pois_.size()));
}

std::span<const PoiIndex> VisitIndex::pois_of(VisitorIndex v) const {
  auto it = std::lower_bound(visitors_.begin(), visitors_.end(), v);
  if (it == visitors_.end() || *it != v) return {};
  const auto i = static_cast<std::size_t>(it - visitors_.begin());
  return std::span<const PoiIndex>(pois_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::vector<PoiIndex> top_pois(const Group& g, std::size_t k, const VisitIndex& visits, const Dataset& dataset) {
  if (k == 0) throw ArgumentError("k' must be at least 1");
  std::vector<std::pair<PoiIndex, std::uint32_t>> counts;
  {
    std::vector<PoiIndex> all;
    for (VisitorIndex m : g.members) {
      auto ps = visits.pois_of(m);
      all.insert(all.end(), ps.begin(), ps.end());
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size();) {
      std::size_t j = i;
      while (j < all.size() && all[j] == all[i]) ++j;
      counts.emplace_back(all[i], static_cast<std::uint32_t>(j - i));
      i = j;
    }
  }
  auto better = [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    const auto ca = dataset.poi(a.first).total_checkins;
    const auto cb = dataset.poi(b.first).total_checkins;
    if (ca != cb) return ca > cb;
    return dataset.poi(a.first).id < dataset.poi(b.first).id;
  };
  const std::size_t n = std::min(k, counts.size());
  std::partial_sort(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(n), counts.end(), better);
  std::vector<PoiIndex> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(counts[i].first);
  return out;
}

std::vector<PoiIndex> top_pois(const Group& g, std::size_t k, std::span<const Checkin> checkins,
                               const Dataset& dataset) {
  return top_pois(g, k, VisitIndex(checkins), dataset);
}

// --- descriptions -----------------------------------------------------------

namespace {

std::string plural(const std::string& name) {
  static const char* const kMass[] = {"food", "art", "outdoor", "outdoors", "nightlife", "shopping", "travel",
                                      "community", "entertainment", "uncategorized"};
  auto ends_with = [&](std::string_view suffix) {
    return name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  for (const char* m : kMass)
    if (name == m) return name + " places";
  if (ends_with("ing") || ends_with("ss")) return name + " places";
  if (ends_with("y") && name.size() > 1 && std::string_view("aeiou").find(name[name.size() - 2]) == std::string::npos)
    return name.substr(0, name.size() - 1) + "ies";
  if (ends_with("s") || ends_with("x") || ends_with("z") || ends_with("ch") || ends_with("sh")) return name + "es";
  return name + "s";
}

std::string hourly_phrase(Hourly h) {
  return h == Hourly::night ? "at night" : "in the " + std::string(to_string(h));
}

std::string weekly_phrase(Weekly w) { return w == Weekly::weekend ? "on weekends" : "on weekdays"; }

std::string demog_phrase(DemographicBucket b) {
  const std::string bucket(to_string(b.bucket));
  if (b.attribute == DemogAttribute::places) return "went to " + bucket + " places";
  return "have " + bucket + " " + std::string(to_string(b.attribute));
}

std::string join_list(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += (i + 1 == parts.size()) ? " and " : ", ";
    out += parts[i];
  }
  return out;
}

}  // namespace

GroupDescription describe(const Group& g, const Dataset& dataset) {
  const auto& dict = dataset.items();
  GroupDescription d;
  d.member_count = g.members.size();

  std::vector<std::string> demog;
  for (ItemId i : g.demog_items) demog.push_back(demog_phrase(dict.decode(i).demog));
  d.demographic_phrases = demog;

  // category -> qualifiers, in category id order
  std::map<CategoryId, std::vector<std::string>> visits;
  for (ItemId i : g.category_items) {
    const auto cat = dict.decode(i).category;
    visits[cat];
    d.category_phrases.push_back(plural(dataset.category_name(cat)));
  }
  for (ItemId i : g.time_items) {
    const auto p = dict.decode(i);
    const std::string q = p.kind == ItemKind::category_hourly ? hourly_phrase(p.hourly) : weekly_phrase(p.weekly);
    visits[p.category].push_back(q);
    d.time_phrases.push_back(plural(dataset.category_name(p.category)) + " " + q);
  }
  for (PoiIndex p : g.pois) d.poi_names.push_back(dataset.poi(p).id);

  std::vector<std::string> clauses;
  if (!demog.empty()) clauses.push_back(join_list(demog));
  if (!visits.empty()) {
    std::vector<std::string> targets;
    for (const auto& [cat, quals] : visits) {
      std::string t = plural(dataset.category_name(cat));
      for (const auto& q : quals) t += " " + q;
      targets.push_back(std::move(t));
    }
    clauses.push_back("tend to visit " + join_list(targets));
  }
  if (!d.poi_names.empty()) clauses.push_back("have all checked in at " + join_list(d.poi_names));
  d.text = "visitors";
  if (!clauses.empty()) d.text += " who " + join_list(clauses);
  return d;
}

}  // namespace likemind
