#pragma once

#include <json.hpp>
#include <string>

#include "mmskit/adversarial.hpp"
#include "mmskit/bobw.hpp"
#include "mmskit/core.hpp"
#include "mmskit/ordinal.hpp"
#include "mmskit/rbf.hpp"
#include "mmskit/verify.hpp"

// JSON interchange. Rationals are written as "p/q" strings (integers as "p")
// and read from such strings or from bare integers.

namespace mmskit {

using Json = nlohmann::json;

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& q);

void to_json(Json& j, const Instance& inst);
void from_json(const Json& j, Instance& inst);
void to_json(Json& j, const Allocation& a);
void from_json(const Json& j, Allocation& a);
void to_json(Json& j, const Partition& p);
void from_json(const Json& j, Partition& p);
void to_json(Json& j, const ThresholdList& t);
void from_json(const Json& j, ThresholdList& t);
void to_json(Json& j, const PriorityRanking& r);
void from_json(const Json& j, PriorityRanking& r);
void to_json(Json& j, const Transcript& t);
void from_json(const Json& j, Transcript& t);
void to_json(Json& j, const HardInstanceSpec& s);
void from_json(const Json& j, HardInstanceSpec& s);

void to_json(Json& j, const GuaranteeReport& r);
void to_json(Json& j, const TranscriptReport& r);
void to_json(Json& j, const OrdinalRun& r);
void to_json(Json& j, const AllocationDistribution& d);
void to_json(Json& j, const FailureReport& r);

/// Parses text as JSON, turning syntax and schema errors into InputError.
Json parse_json(const std::string& text, const std::string& source);

/// Converts with InputError (naming `what`) on any schema mismatch.
template <class T>
T json_as(const Json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError("bad " + what + ": " + e.what());
  }
}

}  // namespace mmskit
