#pragma once

#include <span>
#include <string>
#include <vector>

#include "likemind/dataset.hpp"

namespace likemind {

/// A visitor's enriched embedding restricted to the request's check-ins.
struct Transaction {
  VisitorIndex visitor = 0;
  std::vector<ItemId> items;  // sorted, unique
};

/// One transaction per distinct visitor in `checkins`, ordered by visitor.
/// Items: the five demographic buckets, and per check-in the POI, its
/// categories and the (category, hourly) / (category, weekly) pairs.
std::vector<Transaction> build_transactions(const Dataset& dataset, std::span<const Checkin> checkins);

struct MiningConfig {
  std::size_t min_support = 2;
  std::size_t max_itemset_len = 4;
  std::size_t max_transactions = 50000;
  std::size_t max_groups = 500000;
};

struct ClosedItemset {
  std::vector<ItemId> items;          // sorted
  std::vector<std::uint32_t> tids;    // sorted positions into the input
};

/// Every closed itemset with support >= min_support and at most
/// max_itemset_len items, ordered by support desc then items lexicographically.
/// Items of each transaction must be sorted and unique.
std::vector<ClosedItemset> mine_closed_itemsets(std::span<const std::vector<ItemId>> transactions,
                                                const MiningConfig& config);

struct Group {
  std::vector<ItemId> itemset;
  std::vector<VisitorIndex> members;  // sorted
  std::size_t support = 0;
  std::vector<ItemId> demog_items;
  std::vector<ItemId> poi_items;
  std::vector<ItemId> category_items;
  std::vector<ItemId> time_items;
  std::vector<PoiIndex> pois;          // payloads of poi_items, sorted
  std::vector<PoiIndex> display_pois;  // filled by top_pois
};

std::vector<Group> mine_groups(std::span<const Transaction> transactions, const ItemDictionary& items,
                               const MiningConfig& config = {});

/// Share of the portfolio found among the group's POI items; 1 for an
/// empty portfolio.
double relevance(const Group& g, std::span<const PoiIndex> portfolio);

/// Per-visitor POIs within one request's check-ins.
class VisitIndex {
 public:
  explicit VisitIndex(std::span<const Checkin> checkins);
  std::span<const PoiIndex> pois_of(VisitorIndex v) const;

 private:
  std::vector<VisitorIndex> visitors_;
  std::vector<std::uint32_t> offsets_;
  std::vector<PoiIndex> pois_;
};

/// Up to k POIs of the request's check-ins visited by the group's members,
/// ranked by distinct visiting members, then total check-ins, then POI id.
std::vector<PoiIndex> top_pois(const Group& g, std::size_t k, const VisitIndex& visits, const Dataset& dataset);
std::vector<PoiIndex> top_pois(const Group& g, std::size_t k, std::span<const Checkin> checkins,
                               const Dataset& dataset);

struct GroupDescription {
  std::size_t member_count = 0;
  std::vector<std::string> demographic_phrases;
  std::vector<std::string> category_phrases;
  std::vector<std::string> time_phrases;
  std::vector<std::string> poi_names;
  std::string text;
};

GroupDescription describe(const Group& g, const Dataset& dataset);

}  // namespace likemind
