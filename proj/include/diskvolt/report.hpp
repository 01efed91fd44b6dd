#pragma once

#include "json.hpp"

#include "diskvolt/carleson.hpp"
#include "diskvolt/operators.hpp"
#include "diskvolt/quadrature.hpp"
#include "diskvolt/spaces.hpp"

namespace diskvolt {

using Json = nlohmann::json;

// Serialization used by the CLI reports. Field names are part of the output
// schema documented in the README.
void to_json(Json& j, const NormResult& r);
void to_json(Json& j, const IntegralResult& r);
void to_json(Json& j, const QuadratureConfig& cfg);
void to_json(Json& j, const LevelStat& s);
void to_json(Json& j, const CarlesonProfile& p);
void to_json(Json& j, const CarlesonClassification& c);
void to_json(Json& j, const GrowthProfile& p);
void to_json(Json& j, const NamedIntegral& e);
void to_json(Json& j, const CriterionVerdict& v);
void to_json(Json& j, const AuditReport& r);

}  // namespace diskvolt
