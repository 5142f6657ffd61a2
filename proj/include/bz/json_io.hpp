#pragma once

#include "bz/family_sim.hpp"
#include "bz/laurent.hpp"
#include "bz/segments.hpp"
#include "bz/twist_detect.hpp"
#include "bz/wd_eps.hpp"
#include "bz/weyl.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bz {

using Json = nlohmann::ordered_json;

/// Parse text as JSON; DomainError on malformed input.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

Json laurent_to_json(const LaurentScalar& p);
LaurentScalar laurent_from_json(const Json& j);
/// Accepts a Laurent JSON object or a rational given as a string or integer.
LaurentScalar scalar_from_json(const Json& j);

Json label_to_json(const CuspidalLabel& c);
CuspidalLabel label_from_json(const Json& j);

Json segment_to_json(const Segment& s);
Segment segment_from_json(const Json& j);

Json multisegment_to_json(const MultiSegment& s);
MultiSegment multisegment_from_json(const Json& j);

Json skeleton_to_json(const TwistSkeleton& sk);
/// Validated, with default variable names filled in.
TwistSkeleton skeleton_from_json(const Json& j);

std::vector<FamilyPoint> points_from_json(const Json& j, std::string& base_point);

ExponentPolicy policy_from_json(const Json& j);

Json epsilon_to_json(const EpsilonFactor& e);

Json summand_to_json(const IsotypicSummand& s);

struct TraceEntry {
    int line = 0;
    int j = 1;
    int d = 0;
    LaurentScalar value;
};

struct TraceTable {
    std::optional<Rational> q;  // nullopt: values are formal in v
    std::vector<TraceEntry> traces;
};

Json traces_to_json(const TraceTable& t);
TraceTable traces_from_json(const Json& j);

/// Oracle answering from a trace table; DomainError for missing probes.
TraceOracle table_oracle(const TraceTable& t);

} // namespace bz
