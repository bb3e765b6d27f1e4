#include "chebias/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chebias/constants.hpp"
#include "chebias/numkernel.hpp"

namespace chebias {

namespace {

constexpr int kExactDigits = 40;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ScanResult scan_extremum(const std::vector<StepPoint>& steps, const std::function<HPReal(double)>& r, double y0,
                         double y1, int digits) {
  if (steps.empty()) throw std::invalid_argument("scan_extremum: no step points");
  if (!(y0 <= y1)) throw std::invalid_argument("scan_extremum: y0 > y1");
  if (steps.front().x != y0) throw std::invalid_argument("scan_extremum: first step point must be y0");
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (!(steps[i].x > steps[i - 1].x)) throw std::invalid_argument("scan_extremum: change points not sorted");
  }
  if (steps.back().x > y1) throw std::invalid_argument("scan_extremum: change point beyond y1");

  const std::size_t n = steps.size();
  std::vector<HPReal> rv;
  rv.reserve(n + 1);
  for (const auto& s : steps) rv.push_back(r(s.x).with_digits(digits));
  rv.push_back(r(y1).with_digits(digits));
  for (std::size_t i = 1; i < rv.size(); ++i) {
    if (rv[i] < rv[i - 1]) throw std::invalid_argument("scan_extremum: r is not non-decreasing");
  }

  ScanResult out;
  out.y0 = y0;
  out.y1 = y1;
  out.change_points = n - 1;
  bool have_cp = false;
  for (std::size_t i = 0; i < n; ++i) {
    const HPReal up = steps[i].value - rv[i];
    if (i == 0 || up > out.sup_value) {
      out.sup_value = up;
      out.sup_arg = steps[i].x;
    }
    if (i > 0 && (!have_cp || up > out.sup_changepoint_value)) {
      out.sup_changepoint_value = up;
      out.sup_changepoint_arg = steps[i].x;
      have_cp = true;
    }
    const HPReal down = steps[i].value - rv[i + 1];
    if (i == 0 || down < out.inf_value) {
      out.inf_value = down;
      out.inf_arg = steps[i].x;
      out.inf_limit_arg = i + 1 < n ? steps[i + 1].x : y1;
    }
  }
  if (!have_cp) {
    out.sup_changepoint_value = out.sup_value;
    out.sup_changepoint_arg = out.sup_arg;
  }
  return out;
}

ScanResult drift_scan(const SummatorySeries& series, std::uint64_t x_max, int digits, kernels::Exec exec) {
  if (x_max < 1 || x_max > series.x_max()) throw std::out_of_range("drift_scan: x_max outside the sieve range");
  const auto& sup = series.lambda_support();
  const std::size_t m = static_cast<std::size_t>(std::upper_bound(sup.n.begin(), sup.n.end(), x_max) - sup.n.begin());
  const double tau = static_cast<double>(series.spec().tau_num()) / series.spec().tau_den();

  // x_0 = 1 with F = 0, then the support of Λ_f.
  std::vector<double> xs(m + 1), f(m + 1);
  xs[0] = 1;
  f[0] = 0;
  double sum = 0, comp = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = std::log(static_cast<double>(sup.q[i])) / static_cast<double>(sup.n[i]) - comp;
    const double s = sum + t;
    comp = (s - sum) - t;
    sum = s;
    xs[i + 1] = static_cast<double>(sup.n[i]);
    f[i + 1] = sum;
  }
  const double y1 = static_cast<double>(x_max);
  auto upper = [&](std::uint64_t i) { return f[i] - tau * std::log(xs[i]); };
  auto lower = [&](std::uint64_t i) { return f[i] - tau * std::log(i < m ? xs[i + 1] : y1); };

  const kernels::Extremum all = kernels::extremum(0, m + 1, upper, lower, exec);
  const kernels::Extremum cps = kernels::extremum(1, m + 1, upper, lower, exec);

  // Exact re-evaluation of every index within the double-precision margin.
  constexpr double kMargin = 1e-9;
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i <= m; ++i) {
    if (upper(i) >= all.max_value - kMargin || lower(i) <= all.min_value + kMargin ||
        (i > 0 && upper(i) >= cps.max_value - kMargin)) {
      cand.push_back(i);
    }
  }
  const int wd = digits + 10;
  const HPReal hp_tau = series.spec().tau(wd);
  std::vector<HPReal> exact_f;
  exact_f.reserve(cand.size());
  {
    HPReal acc(wd);
    std::size_t next = 0;
    for (const std::size_t i : cand) {
      for (; next < i; ++next) {
        acc += log_of(static_cast<std::int64_t>(sup.q[next]), wd) / static_cast<long>(sup.n[next]);
      }
      exact_f.push_back(acc);
    }
  }
  ScanResult out;
  out.y0 = 1;
  out.y1 = y1;
  out.change_points = m;
  bool have_sup = false, have_cp = false, have_inf = false;
  for (std::size_t k = 0; k < cand.size(); ++k) {
    const std::size_t i = cand[k];
    const HPReal up = exact_f[k] - hp_tau * log(HPReal(xs[i], wd));
    const double next_x = i < m ? xs[i + 1] : y1;
    const HPReal down = exact_f[k] - hp_tau * log(HPReal(next_x, wd));
    if (!have_sup || up > out.sup_value) {
      out.sup_value = up;
      out.sup_arg = xs[i];
      have_sup = true;
    }
    if (i > 0 && (!have_cp || up > out.sup_changepoint_value)) {
      out.sup_changepoint_value = up;
      out.sup_changepoint_arg = xs[i];
      have_cp = true;
    }
    if (!have_inf || down < out.inf_value) {
      out.inf_value = down;
      out.inf_arg = xs[i];
      out.inf_limit_arg = next_x;
      have_inf = true;
    }
  }
  if (!have_cp) {
    out.sup_changepoint_value = out.sup_value;
    out.sup_changepoint_arg = out.sup_arg;
  }
  out.sup_value = out.sup_value.with_digits(digits);
  out.sup_changepoint_value = out.sup_changepoint_value.with_digits(digits);
  out.inf_value = out.inf_value.with_digits(digits);
  return out;
}

SandwichBounds cited_bounds(const SemigroupSpec& spec, int digits) {
  if (spec.kind != SemigroupKind::residue_class) {
    throw std::invalid_argument("cited_bounds: only g_3_1, g_3_2, g_4_1, g_4_3 have quoted drift bounds");
  }
  const int wd = digits + 5;
  SandwichBounds b{spec, spec.tau(wd), HPReal(wd), HPReal(wd), c_constant(spec, wd).value, ""};
  b.provenance = "cited: unconditional drift bounds valid for every x >= 1";
  if (spec.d == 4 && spec.a == 1) {
    b.c_minus = HPReal::parse("-1.202", wd);
  } else if (spec.d == 4) {
    b.c_minus = log_of(3, wd) / 3L - log_of(7, wd) / 2L;
  } else if (spec.a == 1) {
    b.c_minus = HPReal::parse("-1.4", wd);
  } else {
    b.c_minus = -log_of(2, wd) / 2L;
    b.c_plus = HPReal::parse("0.2764", wd);
  }
  return b;
}

SandwichBounds scanned_bounds(const SummatorySeries& series, std::uint64_t x_max, int digits) {
  const ScanResult s = drift_scan(series, x_max, digits);
  const int wd = digits + 5;
  const HPReal c_f = series.spec().kind == SemigroupKind::all_integers ? HPReal(1L, wd)
                                                                        : c_constant(series.spec(), wd).value;
  return {series.spec(), series.spec().tau(wd), s.inf_value, s.sup_value, c_f,
          "scanned: drift extrema over [1, " + std::to_string(x_max) + "]"};
}

namespace {

// (C_f/τ) L^τ (1 − a/L)^{τ+1} / (1 − b/L)
HPReal sandwich_side(const SandwichBounds& bd, const HPReal& L, const HPReal& a, const HPReal& b) {
  const HPReal one(1L, L.digits());
  return bd.c_f / bd.tau * pow(L, bd.tau) * pow(one - a / L, bd.tau + one) / (one - b / L);
}

}  // namespace

Sandwich mu_sandwich(const SandwichBounds& b, double x, int digits) {
  const int wd = digits + 5;
  const HPReal L = log(HPReal(x, wd));
  if (!(L > b.c_plus)) throw std::domain_error("mu_sandwich: need x > exp(C_plus)");
  if (b.c_minus > b.c_plus) throw std::invalid_argument("mu_sandwich: C_minus > C_plus");
  return {sandwich_side(b, L, b.c_plus, b.c_minus).with_digits(digits),
          sandwich_side(b, L, b.c_minus, b.c_plus).with_digits(digits)};
}

RefinedSandwich mu_sandwich_refined(const SandwichBounds& b, const RefinementTail& tail, double x, int digits) {
  const double tau = b.tau.to_double();
  const double cm = b.c_minus.to_double();
  const double cp = b.c_plus.to_double();
  if (!(tail.c_plus_prime <= cp)) throw std::invalid_argument("mu_sandwich_refined: C'_plus exceeds C_plus");
  if (tail.n0 < 1 || tail.x0 < tail.n0) throw std::domain_error("mu_sandwich_refined: need 1 <= n0 <= x0");
  if (!(std::log(tail.x0) > cp)) throw std::domain_error("mu_sandwich_refined: need x0 > exp(C_plus)");

  // Shapes without the common C_f/τ factor.
  auto lower = [&](double u, double d) { return std::pow(u, tau) * std::pow(1 - d / u, tau + 1) / (1 - cm / u); };
  auto upper = [&](double u, double d) { return std::pow(u, tau) * std::pow(1 - cm / u, tau + 1) / (1 - d / u); };
  const double cf_tau = (b.c_f / b.tau).to_double();
  const double log_n0 = std::log(tail.n0);

  auto ratio_inf = [&](double d) {
    if (tail.n0 == 1) return 1.0;
    // On [g_j, g_{j+1}]: μ(x/n0)/μ(x) ≥ lower(g_j/n0)/upper(g_{j+1}); both shapes increase here.
    double best = 1.0;
    double u = std::log(tail.x0);
    while (u < 1000) {
      const double next = u * 1.002 + 1e-3;
      const double v = u - log_n0;
      const double lo = v > d && v > 0 ? std::max(1.0, cf_tau * lower(v, d)) : 1.0;
      const double up = cf_tau * upper(next, d);
      best = std::min(best, lo / up);
      u = next;
    }
    return std::max(best, 0.0);
  };

  double d = cp;
  int it = 0;
  for (; it < 200; ++it) {
    const double next = std::min(d, cp - (cp - tail.c_plus_prime) * ratio_inf(d));
    const bool done = std::abs(next - d) < 1e-6;
    d = next;
    if (done) break;
  }
  if (x < tail.x0) throw std::domain_error("mu_sandwich_refined: x below the refined range x0");
  SandwichBounds refined = b;
  refined.c_plus = HPReal(d, b.c_plus.digits());
  return {mu_sandwich(refined, x, digits), d, it + 1};
}

HPReal grh_envelope(double x, int d, int digits) {
  if (x < 224) throw std::domain_error("grh_envelope: needs x >= 224");
  if (d > 432 || d < 1) throw std::domain_error("grh_envelope: needs 1 <= d <= 432");
  const int wd = digits + 5;
  const HPReal hx(x, wd);
  const HPReal L = log(hx);
  const HPReal v = HPReal(11L, wd) / (const_pi(wd) * 32L * sqrt(hx)) * (L * L * 3L + L * 8L + HPReal(16L, wd));
  return v.with_digits(digits);
}

BiasVerdict psi_linear_check(const SummatorySeries& series, const HPReal& slope, Direction direction, double x_from,
                             double x_to, kernels::Exec exec) {
  if (x_from < 0 || x_to < x_from) throw std::invalid_argument("psi_linear_check: bad range");
  if (x_to > static_cast<double>(series.x_max())) throw std::out_of_range("psi_linear_check: x_to beyond sieve limit");
  BiasVerdict v;
  v.metric = "psi";
  v.left = "psi_" + series.spec().name();
  v.right = slope.to_string(12) + "*x";
  v.x_from = x_from;
  v.x_to = x_to;
  const bool at_most = direction == Direction::at_most;
  if (!at_most) v.note = "psi >= slope*x; a violating segment [n, n+1) fails as x approaches its right end";

  const auto n_from = static_cast<std::uint64_t>(std::floor(x_from));
  const auto n_to = static_cast<std::uint64_t>(std::floor(x_to));
  const double c = slope.to_double();
  // The binding x of segment n.
  auto point = [&](std::uint64_t n) {
    if (at_most) return std::max(static_cast<double>(n), x_from);
    return std::min(static_cast<double>(n + 1), x_to);
  };
  auto maybe_bad = [&](std::uint64_t n) {
    const double rhs = c * point(n);
    const double psi = series.psi_approx(n);
    const double tol = 1e-9 * (1 + std::abs(rhs));
    return at_most ? psi > rhs - tol : psi < rhs + tol;
  };
  auto exact_bad = [&](std::uint64_t n, std::string* lv, std::string* rv) {
    const HPReal psi = series.psi_f(static_cast<double>(n), kExactDigits);
    const HPReal rhs = slope.with_digits(kExactDigits) * HPReal(point(n), kExactDigits);
    if (lv) *lv = psi.to_string(20);
    if (rv) *rv = rhs.to_string(20);
    return at_most ? psi > rhs : psi < rhs;
  };

  std::uint64_t lo = n_from;
  while (lo <= n_to) {
    const auto hit = kernels::first_true(lo, n_to + 1, maybe_bad, exec);
    if (!hit) break;
    if (exact_bad(*hit, &v.left_value, &v.right_value)) {
      v.holds = false;
      v.first_violation = std::max(static_cast<double>(*hit), x_from);
      break;
    }
    lo = *hit + 1;
  }
  if (!v.holds) {
    for (std::uint64_t n = n_to;; --n) {
      if (maybe_bad(n) && exact_bad(n, nullptr, nullptr)) {
        v.last_violation = std::max(static_cast<double>(n), x_from);
        break;
      }
      if (n == n_from) break;
    }
  }
  return v;
}

PropagationResult propagation_certificate(const PropagationInput& in, int digits) {
  if (!(in.tau > 0 && in.r > 0 && in.s > 0 && in.c1 > 0)) {
    throw std::invalid_argument("propagation_certificate: tau, r, s, c1 must be positive");
  }
  if (in.c_minus > in.c_plus || in.cp_minus > in.cp_plus) {
    throw std::invalid_argument("propagation_certificate: need C_minus <= C_plus");
  }
  const int wd = digits + 5;
  auto H = [&](double v) { return HPReal(v, wd); };
  const HPReal one(1L, wd);
  const HPReal x0 = max(exp(H(in.cp_plus)) * H(in.s), exp(H(in.c_plus)) * H(in.r));
  const HPReal x1 = H(in.x1);
  if (!(x1 > x0)) throw std::domain_error("propagation_certificate: x1 must exceed x0");

  const HPReal log_xs = log(x1 / H(in.s));
  const HPReal log_xr = log(x1 / H(in.r));
  const HPReal lhs = one + (H(in.cp_minus) - H(in.c_plus) + log(H(in.s) / H(in.r))) / (log_xs - H(in.cp_minus));
  const HPReal num = one + (H(in.cp_plus) - H(in.cp_minus)) / (log_xs - H(in.cp_plus));
  const HPReal den = one + (H(in.c_minus) - H(in.c_plus)) / (log_xr - H(in.c_minus));
  const HPReal rhs = pow(H(in.c1) * num / den, one / H(in.tau));

  PropagationResult out;
  out.x0 = x0.to_double();
  out.lhs = lhs.with_digits(digits);
  out.rhs = rhs.with_digits(digits);
  if (std::log(in.s) + in.cp_minus <= in.c_plus + std::log(in.r)) {
    out.branch = 1;
    out.certified = lhs >= rhs;
  } else {
    out.branch = 2;
    out.certified = rhs <= one;
  }
  return out;
}

const char* variant_name(SquarefreeVariant v) {
  switch (v) {
    case SquarefreeVariant::all: return "Q";
    case SquarefreeVariant::odd: return "Q_odd";
    case SquarefreeVariant::coprime3: return "Q_chi3";
  }
  return "?";
}

BiasVerdict squarefree_remainder_scan(const SieveTables& tables, SquarefreeVariant variant,
                                      const RemainderBound& bound, double x_from, double x_to, kernels::Exec exec) {
  if (x_from < 0 || x_to < x_from) throw std::invalid_argument("squarefree_remainder_scan: bad range");
  if (x_to > static_cast<double>(tables.x_max())) {
    throw std::out_of_range("squarefree_remainder_scan: x_to beyond sieve limit");
  }
  if (bound.alpha < 0 || bound.beta < 0) {
    throw std::invalid_argument("squarefree_remainder_scan: bound must be non-decreasing and concave");
  }
  auto count = [&](std::uint64_t n) -> std::uint64_t {
    if (n == 0) return 0;
    switch (variant) {
      case SquarefreeVariant::all: return tables.count_squarefree(n);
      case SquarefreeVariant::odd: return tables.count_squarefree_odd(n);
      case SquarefreeVariant::coprime3: return tables.count_squarefree_coprime3(n);
    }
    return 0;
  };
  const int wd = kExactDigits;
  const HPReal pi2 = [&] {
    const HPReal p = const_pi(wd);
    return p * p;
  }();
  const HPReal hc = variant == SquarefreeVariant::all ? HPReal(6L, wd) / pi2
                    : variant == SquarefreeVariant::odd ? HPReal(4L, wd) / pi2
                                                        : HPReal(9L, wd) / (pi2 * 2L);
  const double c = hc.to_double();
  auto b = [&](double x) { return bound.alpha * std::sqrt(x) + bound.beta * std::sqrt(std::sqrt(x)) + bound.gamma; };
  auto hb = [&](double x) {
    const HPReal hx(x, wd);
    return HPReal(bound.alpha, wd) * sqrt(hx) + HPReal(bound.beta, wd) * sqrt(sqrt(hx)) + HPReal(bound.gamma, wd);
  };

  const auto n_from = static_cast<std::uint64_t>(std::floor(x_from));
  const auto n_to = static_cast<std::uint64_t>(std::floor(x_to));
  auto left = [&](std::uint64_t n) { return std::max(static_cast<double>(n), x_from); };
  auto right = [&](std::uint64_t n) { return std::min(static_cast<double>(n + 1), x_to); };
  // Segment [l, r): Q − c·x decreases, c·x − Q − b(x) is convex, so the
  // endpoints carry the extremes.
  auto slack = [&](std::uint64_t n) {
    const double q = static_cast<double>(count(n));
    const double l = left(n), r = right(n);
    const double s1 = b(l) - (q - c * l);
    const double s2 = b(l) - (c * l - q);
    const double s3 = b(r) - (c * r - q);
    return std::min({s1, s2, s3});
  };
  auto maybe_bad = [&](std::uint64_t n) { return slack(n) <= 1e-9 * (1 + c * right(n)); };
  auto exact_bad = [&](std::uint64_t n, std::string* lv, std::string* rv) {
    const HPReal q(static_cast<long>(count(n)), wd);
    const double l = left(n), r = right(n);
    const HPReal hl(l, wd), hr(r, wd);
    const HPReal e1 = q - hc * hl, e2 = hc * hl - q, e3 = hc * hr - q;
    const HPReal bl = hb(l), br = hb(r);
    const bool r_attained = r == x_to;
    bool bad;
    if (bound.strict) {
      bad = !(e1 < bl) || !(e2 < bl) || (r_attained ? !(e3 < br) : !(e3 <= br));
    } else {
      bad = e1 > bl || e2 > bl || e3 > br;
    }
    if (lv) *lv = max(max(abs(e1), e2), e3).to_string(20);
    if (rv) *rv = bl.to_string(20);
    return bad;
  };

  BiasVerdict v;
  v.metric = std::string("|") + variant_name(variant) + " - main term|";
  v.left = variant_name(variant);
  v.right = bound.label;
  v.x_from = x_from;
  v.x_to = x_to;
  std::uint64_t lo = n_from;
  while (lo <= n_to) {
    const auto hit = kernels::first_true(lo, n_to + 1, maybe_bad, exec);
    if (!hit) break;
    if (exact_bad(*hit, &v.left_value, &v.right_value)) {
      v.holds = false;
      v.first_violation = left(*hit);
      break;
    }
    lo = *hit + 1;
  }
  if (!v.holds) {
    for (std::uint64_t n = n_to;; --n) {
      if (maybe_bad(n) && exact_bad(n, nullptr, nullptr)) {
        v.last_violation = left(n);
        break;
      }
      if (n == n_from) break;
    }
  }
  const kernels::Extremum ratio = kernels::extremum(
      n_from, n_to + 1,
      [&](std::uint64_t n) {
        const double q = static_cast<double>(count(n));
        const double l = left(n), r = right(n);
        return std::max(std::abs(q - c * l) / b(l), (c * r - q) / b(r));
      },
      [](std::uint64_t) { return 0.0; }, exec);
  v.note = "max |R(x)|/b(x) = " + fmt(ratio.max_value) + " near x = " + std::to_string(ratio.max_index);
  return v;
}

}  // namespace chebias
