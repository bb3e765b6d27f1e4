#pragma once

// Exact races between residue classes and the end-to-end λ/N certificate.

#include <string>
#include <vector>

#include "chebias/bounds.hpp"
#include "chebias/kernels.hpp"
#include "chebias/multfun.hpp"
#include "chebias/verdict.hpp"

namespace chebias {

enum class Metric { pi, theta_pp, psi, N, lambda, mu };
const char* metric_name(Metric m);
/// "pi", "theta_pp", "psi", "N", "lambda", "mu". Throws std::invalid_argument.
Metric parse_metric(const std::string& text);

/// left(x) ≥ right(x) at every integer x in [x_from, x_to]. pi and theta_pp
/// need residue-class specs (π(x;d,a) and Σ_{p^r≤x, p≡a} log p).
BiasVerdict race(Metric metric, const SummatorySeries& left, const SummatorySeries& right, std::uint64_t x_from,
                 std::uint64_t x_to, kernels::Exec exec = kernels::Exec::parallel);

struct TransferReport {
  bool hypothesis_holds = false;
  BiasVerdict hypothesis;  // π(x;d,a) ≥ π(x;d,b)
  std::vector<BiasVerdict> conclusions;  // N, then μ; empty if the hypothesis fails
};
TransferReport transfer_check(std::shared_ptr<const SieveTables> tables, int d, int a, int b, std::uint64_t x0);

struct Corollary2Report {
  bool hypotheses_hold = false;
  BiasVerdict pi_hypothesis;
  BiasVerdict psi_hypothesis;
  BiasVerdict lambda_conclusion;
};
Corollary2Report corollary2_check(std::shared_ptr<const SieveTables> tables, int d, int a, int b, std::uint64_t x0);

struct RacePair {
  int d_left, a_left, d_right, a_right;
  std::string name() const;  // "4,3:4,1"
};
/// "4,3:4,1" (also "g_4_3:g_4_1"); only the four pairs of the main theorem.
RacePair parse_pair(const std::string& text);
std::vector<RacePair> theorem_pairs();

struct SubClaim {
  std::string id;
  std::string statement;
  std::string status;  // verified-exact, certified, not-certified, failed, consistent, informational
  std::string provenance;
  std::string range;
  std::string detail;
};

struct PipelineReport {
  RacePair pair{};
  std::uint64_t x_max = 0;
  std::string status;  // certified-at-desk-scale or not-certified
  std::string conditions;
  std::vector<SubClaim> claims;
  bool ok() const { return status == "certified-at-desk-scale"; }
};

/// λ-race on [threshold, x_max], ψ linear bounds, propagation certificate for
/// x ≥ x_max with cited drift bounds, drift consistency, exact N race and the
/// final integral bound. tables must reach x_max.
PipelineReport theorem2_pipeline(std::shared_ptr<const SieveTables> tables, const RacePair& pair, std::uint64_t x_max,
                                 int digits = 30, kernels::Exec exec = kernels::Exec::parallel);

}  // namespace chebias
