#pragma once

// JSON views of results. Every number is written as a decimal string.

#include <string>

#include <json.hpp>

#include "chebias/bounds.hpp"
#include "chebias/constants.hpp"
#include "chebias/verdict.hpp"
#include "chebias/verifier.hpp"

namespace chebias::report {

inline constexpr const char* kSchema = "chebias.report/1";

/// Shortest round-trip decimal; integral values below 1e15 without exponent.
std::string decimal(double v);

nlohmann::ordered_json to_json(const BiasVerdict& v);
nlohmann::ordered_json to_json(const ConstantResult& c, int sig);
nlohmann::ordered_json to_json(const ScanResult& s, const std::string& quantity, const std::string& conditional);
nlohmann::ordered_json to_json(const Sandwich& s);
nlohmann::ordered_json to_json(const PropagationResult& p);
nlohmann::ordered_json to_json(const TransferReport& t);
nlohmann::ordered_json to_json(const Corollary2Report& c);
nlohmann::ordered_json to_json(const PipelineReport& p);

/// {schema, command, generated_at?, parameters, result}
nlohmann::ordered_json envelope(const std::string& command, nlohmann::ordered_json parameters,
                                nlohmann::ordered_json result, bool timestamp);

}  // namespace chebias::report
