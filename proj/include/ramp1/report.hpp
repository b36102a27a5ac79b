#pragma once

// JSON serialization of the report payloads (schema v1). Field order is
// fixed through ordered_json so documents are byte-identical across
// reruns with the same config and seed.

#include <json.hpp>

#include "ramp1/deform.hpp"
#include "ramp1/moduli.hpp"
#include "ramp1/ramify.hpp"
#include "ramp1/wildtame.hpp"

namespace ramp1 {

using Json = nlohmann::ordered_json;

Json json_field(const FieldSpec* s);
Json json_elem(const FieldElem& v);
Json json_point(const PointP1& P);
Json json_map(const RatMap& f);
Json json_profile(const RamProfile& prof);
Json json_deformation(const DeformationReport& rep);
Json json_rat(const Rat& r);
Json json_counts(const EnumCounts& c);
Json json_estimate(const DimensionEstimate& e);
Json json_transcript(const ReductionTranscript& t);
Json json_family(const FamilyReport& r);

}  // namespace ramp1
