#pragma once

#include <json.hpp>

#include "neutro/contin.hpp"
#include "neutro/limits.hpp"
#include "neutro/value.hpp"

namespace neutro::json_io {

using nlohmann::json;

/// {"intervals":[{"lo","hi","lo_open","hi_open"}],"points":[...]}
json to_json(const RealSet& s);
RealSet realset_from_json(const json& j);

/// {"a": num, "I": {"1": num, ...}}
json to_json(const NeutroNumber& n);
NeutroNumber neutronumber_from_json(const json& j);

/// Array of branches; each is a set object or a number object.
json to_json(const NeutroValue& v);
NeutroValue value_from_json(const json& j);

/// A set object, {"inf": "+"|"-"}, or {"does_not_exist": reason}.
json to_json(const LimitOutcome& o);
LimitOutcome limit_from_json(const json& j);

json to_json(const ContinuityClass& c);

}  // namespace neutro::json_io
