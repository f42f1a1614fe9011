#include "neutro/json_io.hpp"

#include <string>

#include "neutro/error.hpp"

namespace neutro::json_io {

json to_json(const RealSet& s) {
  json ivs = json::array();
  for (const Interval& iv : s.intervals()) {
    ivs.push_back({{"lo", iv.lo}, {"hi", iv.hi}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}});
  }
  return {{"intervals", ivs}, {"points", s.isolated_points()}};
}

RealSet realset_from_json(const json& j) {
  try {
    std::vector<Interval> ivs;
    for (const auto& iv : j.at("intervals")) {
      ivs.push_back(Interval::make(iv.at("lo").get<double>(), iv.at("hi").get<double>(),
                                   iv.at("lo_open").get<bool>(), iv.at("hi_open").get<bool>()));
    }
    const auto pts = j.at("points").get<std::vector<double>>();
    return RealSet::normalize(ivs, pts);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed set object: ") + e.what());
  }
}

json to_json(const NeutroNumber& n) {
  json coeffs = json::object();
  for (const auto& [k, b] : n.indeterminate()) coeffs[std::to_string(k)] = b;
  return {{"a", n.determinate()}, {"I", coeffs}};
}

NeutroNumber neutronumber_from_json(const json& j) {
  try {
    NeutroNumber n(j.at("a").get<double>());
    for (const auto& [k, b] : j.at("I").items()) {
      n = n + NeutroNumber::indeterminacy(std::stoi(k), b.get<double>());
    }
    return n;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed number object: ") + e.what());
  }
}

json to_json(const NeutroValue& v) {
  json arr = json::array();
  for (const Branch& b : v.branches()) {
    arr.push_back(std::visit([](const auto& x) { return to_json(x); }, b));
  }
  return arr;
}

NeutroValue value_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "value must be an array of branches");
  std::vector<Branch> bs;
  for (const auto& b : j) {
    if (b.contains("intervals")) {
      bs.emplace_back(realset_from_json(b));
    } else {
      bs.emplace_back(neutronumber_from_json(b));
    }
  }
  return NeutroValue(std::move(bs));
}

json to_json(const LimitOutcome& o) {
  switch (o.kind()) {
    case LimitOutcome::Kind::Finite: return to_json(o.value());
    case LimitOutcome::Kind::PlusInfinity: return {{"inf", "+"}};
    case LimitOutcome::Kind::MinusInfinity: return {{"inf", "-"}};
    case LimitOutcome::Kind::DoesNotExist: break;
  }
  return {{"does_not_exist", o.reason()}};
}

LimitOutcome limit_from_json(const json& j) {
  if (j.contains("inf")) {
    return j.at("inf") == "+" ? LimitOutcome::plus_infinity() : LimitOutcome::minus_infinity();
  }
  if (j.contains("does_not_exist")) {
    return LimitOutcome::does_not_exist(j.at("does_not_exist").get<std::string>());
  }
  return LimitOutcome::finite(realset_from_json(j));
}

json to_json(const ContinuityClass& c) {
  switch (c.kind) {
    case ContinuityClass::Kind::Continuous:
      return {{"class", "continuous"}, {"value", to_json(c.witness)}};
    case ContinuityClass::Kind::MereoContinuous:
      return {{"class", "mereo-continuous"}, {"witness", to_json(c.witness)}};
    case ContinuityClass::Kind::Discontinuous: break;
  }
  return {{"class", "discontinuous"}, {"reason", c.reason}};
}

}  // namespace neutro::json_io
