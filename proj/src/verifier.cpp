#include "chebias/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "chebias/constants.hpp"

namespace chebias {

namespace {

constexpr int kRaceDigits = 40;

std::string range_text(double a, double b) {
  std::ostringstream os;
  os.precision(15);
  os << "[" << a << ", " << b << "]";
  return os.str();
}

std::string class_name(const SummatorySeries& s) {
  return std::to_string(s.spec().d) + "," + std::to_string(s.spec().a);
}

struct Side {
  std::function<double(std::uint64_t)> approx;
  std::function<HPReal(std::uint64_t, int)> exact;
  bool integral = false;
};

Side make_side(Metric m, const SummatorySeries& s) {
  switch (m) {
    case Metric::pi: {
      const int d = s.spec().d, a = s.spec().a;
      auto count = [&s, d, a](std::uint64_t n) { return static_cast<double>(s.tables().pi_count(n, d, a)); };
      return {count, [count](std::uint64_t n, int digits) { return HPReal(static_cast<long>(count(n)), digits); },
              true};
    }
    case Metric::N: {
      auto count = [&s](std::uint64_t n) { return static_cast<double>(s.m_f(static_cast<double>(n))); };
      return {count, [count](std::uint64_t n, int digits) { return HPReal(static_cast<long>(count(n)), digits); },
              true};
    }
    case Metric::theta_pp:
    case Metric::psi:
      return {[&s](std::uint64_t n) { return s.psi_approx(n); },
              [&s](std::uint64_t n, int digits) { return s.psi_f(static_cast<double>(n), digits); }};
    case Metric::lambda:
      return {[&s](std::uint64_t n) { return s.lambda_approx(n); },
              [&s](std::uint64_t n, int digits) { return s.lambda_sum(static_cast<double>(n), digits); }};
    case Metric::mu:
      return {[&s](std::uint64_t n) { return s.mu_approx(n); },
              [&s](std::uint64_t n, int digits) { return s.mu_f(static_cast<double>(n), digits); }};
  }
  throw std::invalid_argument("race: unknown metric");
}

// Sign of left − right at n, decided exactly; 0 only for equal values
// (distinct log-combinations never agree to 70 digits at these sizes).
int exact_sign(const Side& l, const Side& r, std::uint64_t n) {
  if (l.integral) {
    const double a = l.approx(n), b = r.approx(n);
    return a < b ? -1 : a > b ? 1 : 0;
  }
  HPReal diff = l.exact(n, kRaceDigits) - r.exact(n, kRaceDigits);
  if (abs(diff) > ten_to_minus(kRaceDigits - 10, kRaceDigits)) return diff.sign();
  diff = l.exact(n, 80) - r.exact(n, 80);
  if (abs(diff) > ten_to_minus(70, 80)) return diff.sign();
  return 0;
}

}  // namespace

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::pi: return "pi";
    case Metric::theta_pp: return "theta_pp";
    case Metric::psi: return "psi";
    case Metric::N: return "N";
    case Metric::lambda: return "lambda";
    case Metric::mu: return "mu";
  }
  return "?";
}

Metric parse_metric(const std::string& text) {
  for (Metric m : {Metric::pi, Metric::theta_pp, Metric::psi, Metric::N, Metric::lambda, Metric::mu}) {
    if (text == metric_name(m)) return m;
  }
  throw std::invalid_argument("unknown metric '" + text + "'");
}

BiasVerdict race(Metric metric, const SummatorySeries& left, const SummatorySeries& right, std::uint64_t x_from,
                 std::uint64_t x_to, kernels::Exec exec) {
  if (x_from > x_to) throw std::invalid_argument("race: x_from > x_to");
  if (x_to > left.x_max() || x_to > right.x_max()) throw std::out_of_range("race: x_to beyond sieve limit");
  if ((metric == Metric::pi || metric == Metric::theta_pp) &&
      (left.spec().kind != SemigroupKind::residue_class || right.spec().kind != SemigroupKind::residue_class)) {
    throw std::invalid_argument("race: pi and theta_pp need residue-class specs");
  }
  const Side l = make_side(metric, left), r = make_side(metric, right);
  auto maybe_bad = [&](std::uint64_t n) {
    const double a = l.approx(n), b = r.approx(n);
    if (l.integral) return a < b;
    return a - b < 1e-7 + 1e-12 * std::max(std::abs(a), std::abs(b));
  };

  BiasVerdict v;
  v.metric = metric_name(metric);
  v.left = left.spec().name();
  v.right = right.spec().name();
  v.x_from = static_cast<double>(x_from);
  v.x_to = static_cast<double>(x_to);
  std::uint64_t lo = x_from;
  while (lo <= x_to) {
    const auto hit = kernels::first_true(lo, x_to + 1, maybe_bad, exec);
    if (!hit) break;
    if (exact_sign(l, r, *hit) < 0) {
      v.holds = false;
      v.first_violation = static_cast<double>(*hit);
      if (l.integral) {
        v.left_value = std::to_string(static_cast<std::uint64_t>(l.approx(*hit)));
        v.right_value = std::to_string(static_cast<std::uint64_t>(r.approx(*hit)));
      } else {
        v.left_value = l.exact(*hit, kRaceDigits).to_string(20);
        v.right_value = r.exact(*hit, kRaceDigits).to_string(20);
      }
      break;
    }
    lo = *hit + 1;
  }
  if (!v.holds) {
    for (std::uint64_t n = x_to; n >= x_from; --n) {
      if (maybe_bad(n) && exact_sign(l, r, n) < 0) {
        v.last_violation = static_cast<double>(n);
        break;
      }
      if (n == 0) break;
    }
  }
  return v;
}

TransferReport transfer_check(std::shared_ptr<const SieveTables> tables, int d, int a, int b, std::uint64_t x0) {
  const SummatorySeries sa(tables, SemigroupSpec::residue_class(d, a));
  const SummatorySeries sb(tables, SemigroupSpec::residue_class(d, b));
  TransferReport out;
  out.hypothesis = race(Metric::pi, sa, sb, 1, x0);
  out.hypothesis_holds = out.hypothesis.holds;
  if (!out.hypothesis_holds) return out;
  out.conclusions.push_back(race(Metric::N, sa, sb, 1, x0));
  out.conclusions.push_back(race(Metric::mu, sa, sb, 1, x0));
  return out;
}

Corollary2Report corollary2_check(std::shared_ptr<const SieveTables> tables, int d, int a, int b, std::uint64_t x0) {
  const SummatorySeries sa(tables, SemigroupSpec::residue_class(d, a));
  const SummatorySeries sb(tables, SemigroupSpec::residue_class(d, b));
  Corollary2Report out;
  out.pi_hypothesis = race(Metric::pi, sa, sb, 1, x0);
  out.psi_hypothesis = race(Metric::theta_pp, sa, sb, 1, x0);
  out.hypotheses_hold = out.pi_hypothesis.holds && out.psi_hypothesis.holds;
  out.lambda_conclusion = race(Metric::lambda, sa, sb, 1, x0);
  return out;
}

std::string RacePair::name() const {
  return std::to_string(d_left) + "," + std::to_string(a_left) + ":" + std::to_string(d_right) + "," +
         std::to_string(a_right);
}

std::vector<RacePair> theorem_pairs() { return {{3, 2, 3, 1}, {4, 3, 3, 1}, {3, 2, 4, 1}, {4, 3, 4, 1}}; }

RacePair parse_pair(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("pair must look like 4,3:4,1");
  const SemigroupSpec l = SemigroupSpec::parse(text.substr(0, colon));
  const SemigroupSpec r = SemigroupSpec::parse(text.substr(colon + 1));
  const RacePair p{l.d, l.a, r.d, r.a};
  if (l.kind != SemigroupKind::residue_class || r.kind != SemigroupKind::residue_class) {
    throw std::invalid_argument("pair must name two residue classes");
  }
  for (const auto& q : theorem_pairs()) {
    if (q.d_left == p.d_left && q.a_left == p.a_left && q.d_right == p.d_right && q.a_right == p.a_right) return p;
  }
  throw std::invalid_argument("pair " + p.name() + " is not one of 3,2:3,1 4,3:3,1 3,2:4,1 4,3:4,1");
}

namespace {

struct PairData {
  double r, s;      // λ_L(x) ≥ a_L x μ_L(x/r), λ_R(x) ≤ 0.50456 x μ_R(x/s)
  const char* a_left;
  double a_from;    // ψ_L(y) ≥ a_L y for y ≥ a_from
  double x1_quoted;
  std::uint64_t threshold;  // λ_L ≥ λ_R from here on
};

PairData pair_data(const RacePair& p) {
  const bool left43 = p.d_left == 4;
  const bool right41 = p.d_right == 4;
  if (!left43 && !right41) return {5, 7, "0.335", 5, 1900, 1};
  if (!left43) return {5, 5, "0.335", 5, 4600, 1};
  if (!right41) return {59, 5, "0.4594", 59, 199000, 1};
  return {127, 5, "0.48508", 127, 1.1e6, 7};
}

std::string verdict_detail(const BiasVerdict& v) {
  if (v.holds) return "no violation";
  std::ostringstream os;
  os.precision(15);
  os << "first violation at x = " << *v.first_violation << " (" << v.left_value << " vs " << v.right_value << ")";
  if (v.last_violation) os << ", last at x = " << *v.last_violation;
  return os.str();
}

}  // namespace

PipelineReport theorem2_pipeline(std::shared_ptr<const SieveTables> tables, const RacePair& pair, std::uint64_t x_max,
                                 int digits, kernels::Exec exec) {
  if (x_max < 7 || x_max > tables->x_max()) throw std::out_of_range("theorem2_pipeline: x_max outside [7, sieve limit]");
  const PairData pd = pair_data(pair);
  const SummatorySeries left(tables, SemigroupSpec::residue_class(pair.d_left, pair.a_left));
  const SummatorySeries right(tables, SemigroupSpec::residue_class(pair.d_right, pair.a_right));
  const std::string ln = left.spec().name(), rn = right.spec().name();
  const double xm = static_cast<double>(x_max);

  PipelineReport rep;
  rep.pair = pair;
  rep.x_max = x_max;
  bool ok = true;
  auto add = [&](SubClaim c, bool pass) {
    ok = ok && pass;
    rep.claims.push_back(std::move(c));
  };

  const BiasVerdict lam = race(Metric::lambda, left, right, pd.threshold, x_max, exec);
  add({"lambda-range", "lambda_" + ln + "(x) >= lambda_" + rn + "(x)", lam.holds ? "verified-exact" : "failed",
       "exact sieve scan over integers", range_text(static_cast<double>(pd.threshold), xm), verdict_detail(lam)},
      lam.holds);

  const HPReal upper_slope = HPReal::parse("0.50456", digits);
  const HPReal lower_slope = HPReal::parse(pd.a_left, digits);
  const BiasVerdict pu = psi_linear_check(right, upper_slope, Direction::at_most, 0, xm, exec);
  add({"psi-upper", "psi_" + rn + "(x) <= 0.50456 x", pu.holds ? "verified-exact" : "failed",
       "exact on the range; beyond x_max from cited explicit psi(x;d,a) estimates", range_text(0, xm),
       verdict_detail(pu)},
      pu.holds);
  const BiasVerdict pl = psi_linear_check(left, lower_slope, Direction::at_least, pd.a_from, xm, exec);
  add({"psi-lower", "psi_" + ln + "(x) >= " + std::string(pd.a_left) + " x", pl.holds ? "verified-exact" : "failed",
       "exact on the range; beyond x_max from cited explicit psi(x;d,a) estimates", range_text(pd.a_from, xm),
       verdict_detail(pl)},
      pl.holds);

  const SandwichBounds bl = cited_bounds(left.spec(), digits);
  const SandwichBounds br = cited_bounds(right.spec(), digits);
  const double c1 = (upper_slope * br.c_f / (lower_slope * bl.c_f)).to_double();
  auto certificate = [&](double x1) {
    return propagation_certificate({0.5, pd.r, pd.s, c1, bl.c_minus.to_double(), bl.c_plus.to_double(),
                                    br.c_minus.to_double(), br.c_plus.to_double(), x1},
                                   digits);
  };
  auto cert_detail = [&](const PropagationResult& pr) {
    std::ostringstream os;
    os << "branch " << pr.branch << ", lhs " << pr.lhs.to_string(12) << ", rhs " << pr.rhs.to_string(12)
       << ", x0 " << pr.x0 << ", r " << pd.r << ", s " << pd.s << ", c1 " << c1;
    return os.str();
  };
  const std::string chain = std::string(pd.a_left) + " mu_" + ln + "(x/" + std::to_string(int(pd.r)) +
                            ") >= 0.50456 mu_" + rn + "(x/" + std::to_string(int(pd.s)) + ")";
  try {
    const PropagationResult pr = certificate(xm);
    add({"propagation", chain + " for every x >= x_max", pr.certified ? "certified" : "not-certified",
         "sandwich bounds with cited unconditional drift constants", "[" + std::to_string(x_max) + ", inf)",
         cert_detail(pr)},
        pr.certified);
  } catch (const std::domain_error& e) {
    add({"propagation", chain + " for every x >= x_max", "not-certified",
         "sandwich bounds with cited unconditional drift constants", "[" + std::to_string(x_max) + ", inf)", e.what()},
        false);
  }
  {
    const PropagationResult pq = certificate(pd.x1_quoted);
    std::ostringstream q;
    q.precision(10);
    q << pd.x1_quoted;
    add({"propagation-quoted", chain + " for every x >= " + q.str(),
         pq.certified ? "certified" : "not-certified", "informational: certificate at the quoted threshold",
         "[" + q.str() + ", inf)", cert_detail(pq)},
        true);
  }

  for (const SummatorySeries* s : {&left, &right}) {
    const SandwichBounds& cb = s == &left ? bl : br;
    const ScanResult sc = drift_scan(*s, x_max, digits, exec);
    // the g_4_3 infimum equals its cited C- exactly
    const HPReal slack = ten_to_minus(digits - 3, digits);
    const bool fine = sc.inf_value >= cb.c_minus - slack && sc.sup_value <= cb.c_plus + slack;
    std::ostringstream os;
    os.precision(12);
    os << "scanned inf " << sc.inf_value.to_string(15) << " (x -> " << sc.inf_limit_arg << "), sup "
       << sc.sup_value.to_string(15) << " at " << sc.sup_arg << "; cited C- " << cb.c_minus.to_string(12) << ", C+ "
       << cb.c_plus.to_string(12);
    add({"drift-" + s->spec().name(), "cited C-, C+ bound the drift of " + s->spec().name(),
         fine ? "consistent" : "failed", "drift scan over the sieve range", range_text(1, xm), os.str()},
        fine);
  }

  const BiasVerdict nr = race(Metric::N, left, right, 1, x_max, exec);
  add({"N-race", "N(x;" + class_name(left) + ") >= N(x;" + class_name(right) + ")",
       nr.holds ? "verified-exact" : "failed", "exact sieve scan over integers", range_text(1, xm), verdict_detail(nr)},
      nr.holds);

  {
    const std::uint64_t xc = std::min<std::uint64_t>(x_max, 1000);
    const HPReal tol = ten_to_minus(digits - 5, digits);
    const HPReal e1 = m_from_lambda_residual(left, xc, digits);
    const HPReal e2 = m_from_lambda_residual(right, xc, digits);
    const bool fine = e1 < tol && e2 < tol;
    add({"N-identity", "N = lambda/log x + int_2^x lambda/(t log^2 t) dt + 1 for both classes",
         fine ? "verified-exact" : "failed", "exact piecewise integration", range_text(2, static_cast<double>(xc)),
         "max residuals " + e1.to_string(3) + ", " + e2.to_string(3)},
        fine);
  }

  {
    // δ = λ_L − λ_R ≥ 0 from the threshold on, so N_L − N_R ≥ ∫_2^threshold δ/(t log²t).
    const std::uint64_t t = std::max<std::uint64_t>(pd.threshold, 2);
    std::vector<HPReal> delta(t + 1, HPReal(digits));
    for (std::uint64_t n = 2; n < t; ++n) {
      delta[n] = left.lambda_sum(static_cast<double>(n), digits) - right.lambda_sum(static_cast<double>(n), digits);
    }
    const HPReal bound = step_integral_t_log2(delta, 2, static_cast<double>(t), digits);
    std::string detail = "integral over [2, " + std::to_string(t) + "] = " + bound.to_string(20);
    bool fine = true;
    if (pair.d_left == 4 && pair.d_right == 4) {
      const HPReal closed = (log_of(5, digits) - log_of(3, digits)) / log_of(7, digits);
      fine = agreeing_digits(bound, closed) >= digits - 5;
      detail += ", (log 5 - log 3)/log 7 = " + closed.to_string(20);
    }
    const double b = bound.to_double();
    auto below = [&](std::uint64_t n) {
      return static_cast<double>(left.m_f(static_cast<double>(n))) -
                 static_cast<double>(right.m_f(static_cast<double>(n))) <
             b;
    };
    const auto hit = kernels::first_true(t, x_max + 1, below, exec);
    if (hit) detail += ", violated at x = " + std::to_string(*hit);
    fine = fine && !hit;
    add({"final-bound", "N(x;" + class_name(left) + ") - N(x;" + class_name(right) + ") >= " + bound.to_string(12),
         fine ? "verified-exact" : "failed", "exact step integral plus exact N scan",
         range_text(static_cast<double>(t), xm), detail},
        fine);
  }

  rep.status = ok ? "certified-at-desk-scale" : "not-certified";
  rep.conditions =
      "beyond x_max the chain relies on cited explicit psi(x;d,a) estimates and cited unconditional drift bounds; "
      "no RH(d) input";
  return rep;
}

}  // namespace chebias
