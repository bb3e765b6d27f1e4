#include "chebias/report_json.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>

namespace chebias::report {

using nlohmann::ordered_json;

std::string decimal(double v) {
  char buf[64];
  const bool integral = std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15;
  const auto res = integral ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed)
                            : std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ordered_json to_json(const BiasVerdict& v) {
  ordered_json j;
  j["metric"] = v.metric;
  j["left"] = v.left;
  j["right"] = v.right;
  j["x_from"] = decimal(v.x_from);
  j["x_to"] = decimal(v.x_to);
  j["holds"] = v.holds;
  if (v.first_violation) {
    j["first_violation"] = {{"x", decimal(*v.first_violation)}, {"left", v.left_value}, {"right", v.right_value}};
  } else {
    j["first_violation"] = nullptr;
  }
  j["last_violation"] = v.last_violation ? ordered_json(decimal(*v.last_violation)) : ordered_json(nullptr);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

ordered_json to_json(const ConstantResult& c, int sig) {
  return {{"name", c.name},
          {"value", c.value.to_string(sig)},
          {"digits", std::to_string(sig)},
          {"certified_digits", std::to_string(c.certified_digits)},
          {"method", method_name(c.method)}};
}

ordered_json to_json(const ScanResult& s, const std::string& quantity, const std::string& conditional) {
  ordered_json j;
  j["quantity"] = quantity;
  j["interval"] = {decimal(s.y0), decimal(s.y1)};
  j["sup"] = s.sup_value.to_string(20);
  j["sup_at"] = decimal(s.sup_arg);
  j["sup_changepoints"] = s.sup_changepoint_value.to_string(20);
  j["sup_changepoints_at"] = decimal(s.sup_changepoint_arg);
  j["inf"] = s.inf_value.to_string(20);
  j["inf_at"] = decimal(s.inf_arg);
  j["inf_approached_at"] = decimal(s.inf_limit_arg);
  j["change_points"] = std::to_string(s.change_points);
  j["conditional"] = conditional;
  return j;
}

ordered_json to_json(const Sandwich& s) {
  return {{"lower", s.lower.to_string(20)}, {"upper", s.upper.to_string(20)}};
}

ordered_json to_json(const PropagationResult& p) {
  return {{"certified", p.certified},
          {"branch", std::to_string(p.branch)},
          {"lhs", p.lhs.to_string(20)},
          {"rhs", p.rhs.to_string(20)},
          {"x0", decimal(p.x0)}};
}

ordered_json to_json(const TransferReport& t) {
  ordered_json j;
  j["hypothesis_holds"] = t.hypothesis_holds;
  j["hypothesis"] = to_json(t.hypothesis);
  j["conclusions"] = ordered_json::array();
  for (const auto& c : t.conclusions) j["conclusions"].push_back(to_json(c));
  return j;
}

ordered_json to_json(const Corollary2Report& c) {
  return {{"hypotheses_hold", c.hypotheses_hold},
          {"pi_hypothesis", to_json(c.pi_hypothesis)},
          {"psi_hypothesis", to_json(c.psi_hypothesis)},
          {"lambda_conclusion", to_json(c.lambda_conclusion)}};
}

ordered_json to_json(const PipelineReport& p) {
  ordered_json j;
  j["pair"] = p.pair.name();
  j["x_max"] = std::to_string(p.x_max);
  j["status"] = p.status;
  j["conditions"] = p.conditions;
  j["claims"] = ordered_json::array();
  for (const auto& c : p.claims) {
    j["claims"].push_back({{"id", c.id},
                           {"statement", c.statement},
                           {"status", c.status},
                           {"provenance", c.provenance},
                           {"range", c.range},
                           {"detail", c.detail}});
  }
  return j;
}

ordered_json envelope(const std::string& command, ordered_json parameters, ordered_json result, bool timestamp) {
  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = command;
  if (timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["generated_at"] = buf;
  }
  j["parameters"] = std::move(parameters);
  j["result"] = std::move(result);
  return j;
}

}  // namespace chebias::report
