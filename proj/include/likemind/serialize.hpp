#pragma once

#include <json.hpp>

#include "likemind/engine.hpp"

namespace likemind {

using Json = nlohmann::ordered_json;

Json to_json(const UtilityValues& values);
Json to_json(const Mindset& m);
Json mindset_catalog();

/// Custom mindset in the catalog shape: {"label", "priors": {kind: value},
/// "categories": [...]}. Missing priors count as zero.
Mindset mindset_from_json(const Json& j);

Json to_json(const Poi& p, const Dataset& dataset);
Json to_json(const ItemPayload& item, const Dataset& dataset);
Json to_json(const GroupDescription& d);
Json group_to_json(const Group& g, const GroupDescription& d, double score, const Dataset& dataset);
Json to_json(const EngineParams& p);
Json to_json(const IterationRecord& r);
Json to_json(const StageTimings& t);
Json to_json(const Context& c);
Json to_json(const Recommendation& rec, const Session& session, const Dataset& dataset, bool with_timings);
Json session_summary(const Session& s, const Dataset& dataset);

/// Applies {"r", "k", "k_prime" (or "k'"), "sigma", "max_swaps", "time_limit_ms"}
/// on top of `base`. Unknown keys are rejected.
EngineParams apply_overrides(EngineParams base, const Json& overrides);

}  // namespace likemind
