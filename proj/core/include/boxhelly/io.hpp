#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "boxhelly/cover.hpp"
#include "boxhelly/instance.hpp"
#include "boxhelly/reduce.hpp"
#include "boxhelly/trace.hpp"
#include "boxhelly/witness.hpp"

namespace boxhelly {

inline constexpr const char* kInstanceVersion = "boxhelly-instance/1";
inline constexpr const char* kReportVersion = "boxhelly-report/1";

/// Instance JSON: rationals are canonical "p" or "p/q" strings, a box is an
/// array of [lo, hi] pairs, a point is {"coords": [...], "multiplicity": m}.
/// Throws ParseError on malformed input; accepted rationals are
/// canonicalized, so parse-serialize round-trips byte-identically on
/// canonical files.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& instance);

Instance load_instance(const std::string& path);

/// Canonical text form of any JSON value (sorted keys, 2-space indent,
/// trailing newline).
std::string canonical_text(const nlohmann::json& j);

nlohmann::json boxref_to_json(const BoxRef& ref);
BoxRef boxref_from_json(const nlohmann::json& j);

nlohmann::json check_report_to_json(const CheckReport& report);

nlohmann::json solve_result_to_json(const SolveResult& result);

nlohmann::json certificate_to_json(const WitnessCertificate& cert);
WitnessCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json reduction_to_json(const Reduction& reduction);

}  // namespace boxhelly
