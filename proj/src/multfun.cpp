#include "chebias/multfun.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace chebias {

SemigroupSpec SemigroupSpec::all_integers() { return {SemigroupKind::all_integers, 1, 0}; }

SemigroupSpec SemigroupSpec::residue_class(int d, int a) {
  if (d != 3 && d != 4) throw std::invalid_argument("residue_class: modulus must be 3 or 4");
  if (a < 0 || a >= d || std::gcd(a, d) != 1) {
    throw std::invalid_argument("residue_class: need gcd(a, d) = 1 with 0 <= a < d");
  }
  return {SemigroupKind::residue_class, d, a};
}

SemigroupSpec SemigroupSpec::sum_of_two_squares() { return {SemigroupKind::sum_of_two_squares, 4, 0}; }

SemigroupSpec SemigroupSpec::parse(const std::string& name) {
  std::string k;
  for (const char c : name) {
    if (c == '_' || c == '{' || c == '}' || c == ',' || c == ' ') continue;
    k.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (k == "b1" || k == "b") return sum_of_two_squares();
  if (k == "one" || k == "all" || k == "1") return all_integers();
  if (k.size() == 2 && k[0] != 'g') k.insert(k.begin(), 'g');  // "4,3"
  if (k.size() == 3 && k[0] == 'g' && std::isdigit(static_cast<unsigned char>(k[1])) &&
      std::isdigit(static_cast<unsigned char>(k[2]))) {
    return residue_class(k[1] - '0', k[2] - '0');
  }
  throw std::invalid_argument("unknown semigroup '" + name + "' (expected g_3_1, g_3_2, g_4_1, g_4_3, b1 or one)");
}

std::string SemigroupSpec::name() const {
  switch (kind) {
    case SemigroupKind::all_integers: return "one";
    case SemigroupKind::sum_of_two_squares: return "b1";
    case SemigroupKind::residue_class: return "g_" + std::to_string(d) + "_" + std::to_string(a);
  }
  return "?";
}

int SemigroupSpec::tau_den() const {
  switch (kind) {
    case SemigroupKind::all_integers: return 1;
    case SemigroupKind::sum_of_two_squares: return 2;
    case SemigroupKind::residue_class: return d == 3 || d == 4 ? 2 : d - 1;
  }
  return 1;
}

std::uint64_t SemigroupSpec::generator(std::uint64_t p, int r) const {
  switch (kind) {
    case SemigroupKind::all_integers: return p;
    case SemigroupKind::residue_class: return static_cast<int>(p % static_cast<std::uint64_t>(d)) == a ? p : 0;
    case SemigroupKind::sum_of_two_squares:
      if (p % 4 != 3) return p;
      return r % 2 == 0 ? p * p : 0;
  }
  return 0;
}

bool SemigroupSpec::allows(std::uint64_t p, int e) const {
  switch (kind) {
    case SemigroupKind::all_integers: return true;
    case SemigroupKind::residue_class: return static_cast<int>(p % static_cast<std::uint64_t>(d)) == a;
    case SemigroupKind::sum_of_two_squares: return p % 4 != 3 || e % 2 == 0;
  }
  return false;
}

namespace {

// (p, e) pairs of n by trial division.
std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

template <class Factors>
bool member_of(const Factors& fs, const SemigroupSpec& spec) {
  for (const auto& [p, e] : fs) {
    if (!spec.allows(p, e)) return false;
  }
  return true;
}

std::uint64_t base_of(std::uint64_t p, int r, const SemigroupSpec& spec) {
  const std::uint64_t q = spec.generator(p, r);
  return q == 0 ? 1 : q;
}

}  // namespace

bool member(std::uint64_t n, const SemigroupSpec& spec) {
  if (n == 0) return false;
  return member_of(factor(n), spec);
}

std::uint64_t lambda_base(std::uint64_t n, const SemigroupSpec& spec) {
  if (n < 2) return 1;
  const auto fs = factor(n);
  if (fs.size() != 1) return 1;
  return base_of(fs[0].first, fs[0].second, spec);
}

HPReal lambda_f(std::uint64_t n, const SemigroupSpec& spec, int digits) {
  const std::uint64_t q = lambda_base(n, spec);
  return q == 1 ? HPReal(digits) : log_of(static_cast<std::int64_t>(q), digits);
}

SummatorySeries::SummatorySeries(std::shared_ptr<const SieveTables> tables, SemigroupSpec spec)
    : tables_(std::move(tables)), spec_(spec), member_(tables_->x_max() + 1) {
  const std::uint64_t x_max = tables_->x_max();
  const std::uint32_t* spf = tables_->spf_data();
  std::vector<std::uint8_t> flags(x_max + 1, 0);
#pragma omp parallel for schedule(static, 1 << 14)
  for (std::int64_t i = 1; i <= static_cast<std::int64_t>(x_max); ++i) {
    std::uint64_t n = static_cast<std::uint64_t>(i);
    bool ok = true;
    while (n > 1 && ok) {
      const std::uint64_t p = spf[n];
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      ok = spec_.allows(p, e);
    }
    flags[static_cast<std::size_t>(i)] = ok;
  }
  for (std::uint64_t n = 1; n <= x_max; ++n) {
    if (flags[n]) member_.set(n);
  }
  member_.finalize();

  const auto& ps = spec_.kind == SemigroupKind::residue_class ? tables_->primes_in_class(spec_.d, spec_.a)
                                                                : tables_->primes();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
  for (const std::uint32_t p : ps) {
    std::uint64_t v = p;
    for (int r = 1;; ++r) {
      const std::uint64_t q = spec_.generator(p, r);
      if (q != 0) pts.emplace_back(v, q);
      if (v > x_max / p) break;
      v *= p;
    }
  }
  std::sort(pts.begin(), pts.end());
  support_.n.reserve(pts.size());
  support_.q.reserve(pts.size());
  for (const auto& [n, q] : pts) {
    support_.n.push_back(n);
    support_.q.push_back(q);
  }
}

bool SummatorySeries::member(std::uint64_t n) const {
  if (n == 0) return false;
  if (n > x_max()) throw std::out_of_range("member: argument beyond sieve limit");
  return member_.test(n);
}

std::uint64_t SummatorySeries::lambda_base(std::uint64_t n) const {
  if (n > x_max()) throw std::out_of_range("lambda_base: argument beyond sieve limit");
  if (n < 2) return 1;
  const std::uint32_t* spf = tables_->spf_data();
  const std::uint64_t p = spf[n];
  std::uint64_t m = n;
  int r = 0;
  while (m % p == 0) {
    m /= p;
    ++r;
  }
  if (m != 1) return 1;
  return base_of(p, r, spec_);
}

const SummatorySeries::Support& SummatorySeries::lambda_support() const { return support_; }

std::uint64_t SummatorySeries::clamp(double x, const char* what) const {
  if (!(x >= 0)) return 0;
  const double f = std::floor(x);
  if (f > static_cast<double>(x_max())) {
    throw std::out_of_range(std::string(what) + ": argument beyond sieve limit " + std::to_string(x_max()));
  }
  return static_cast<std::uint64_t>(f);
}

std::uint64_t SummatorySeries::m_f(double x) const {
  const std::uint64_t n = clamp(x, "m_f");
  return n == 0 ? 0 : member_.rank(n);
}

HPReal log_combination(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& terms, int digits) {
  const int wd = digits + 5;
  HPReal sum(wd);
  for (const auto& [p, c] : terms) {
    if (c == 0 || p == 1) continue;
    sum += log_of(static_cast<std::int64_t>(p), wd) * static_cast<long>(c);
  }
  return sum.with_digits(digits);
}

HPReal SummatorySeries::psi_f(double x, int digits) const {
  const std::uint64_t n = clamp(x, "psi_f");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;
  const auto end = std::upper_bound(support_.n.begin(), support_.n.end(), n) - support_.n.begin();
  for (std::ptrdiff_t i = 0; i < end; ++i) counts.emplace_back(support_.q[static_cast<std::size_t>(i)], 1);
  std::sort(counts.begin(), counts.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> merged;
  for (const auto& [q, c] : counts) {
    if (!merged.empty() && merged.back().first == q) {
      merged.back().second += c;
    } else {
      merged.emplace_back(q, c);
    }
  }
  return log_combination(merged, digits);
}

HPReal SummatorySeries::mu_f(double x, int digits) const {
  const std::uint64_t n = clamp(x, "mu_f");
  const int wd = digits + 5;
  HPReal sum(wd);
  const HPReal one(1L, wd);
  for (std::uint64_t k = 1; k <= n; ++k) {
    if (member_.test(k)) sum += one / HPReal(static_cast<long>(k), wd);
  }
  return sum.with_digits(digits);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> SummatorySeries::lambda_exponents(std::uint64_t x) const {
  if (x > x_max()) throw std::out_of_range("lambda_exponents: argument beyond sieve limit");
  std::vector<std::uint64_t> e(x + 1, 0);
  const std::uint32_t* spf = tables_->spf_data();
  for (std::uint64_t n = 2; n <= x; ++n) {
    if (!member_.test(n)) continue;
    std::uint64_t m = n;
    while (m > 1) {
      const std::uint32_t p = spf[m];
      m /= p;
      ++e[p];
    }
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t p = 2; p <= x; ++p) {
    if (e[p]) out.emplace_back(p, e[p]);
  }
  return out;
}

HPReal SummatorySeries::lambda_sum(double x, int digits) const {
  return log_combination(lambda_exponents(clamp(x, "lambda_sum")), digits);
}

HPReal SummatorySeries::lambda_over_n(double x, int digits) const {
  const std::uint64_t n = clamp(x, "lambda_over_n");
  const int wd = digits + 5;
  HPReal sum(wd);
  for (std::size_t i = 0; i < support_.n.size() && support_.n[i] <= n; ++i) {
    sum += log_of(static_cast<std::int64_t>(support_.q[i]), wd) / static_cast<long>(support_.n[i]);
  }
  return sum.with_digits(digits);
}

const std::vector<double>& SummatorySeries::prefix(PrefixKind kind) const {
  Prefix& slot = prefix_[kind];
  std::call_once(slot.once, [&] {
    const std::uint64_t x_max = tables_->x_max();
    std::vector<double> v(x_max + 1, 0.0);
    // Kahan summation, serial so the values are reproducible.
    double sum = 0, comp = 0;
    auto add = [&](double t) {
      const double y = t - comp;
      const double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
    };
    std::size_t si = 0;
    for (std::uint64_t n = 1; n <= x_max; ++n) {
      switch (kind) {
        case kPsi:
        case kLambdaOverN:
          if (si < support_.n.size() && support_.n[si] == n) {
            const double lq = std::log(static_cast<double>(support_.q[si]));
            add(kind == kPsi ? lq : lq / static_cast<double>(n));
            ++si;
          }
          break;
        case kMu:
          if (member_.test(n)) add(1.0 / static_cast<double>(n));
          break;
        case kLambda:
          if (member_.test(n)) add(std::log(static_cast<double>(n)));
          break;
        default: break;
      }
      v[n] = sum;
    }
    slot.values = std::move(v);
  });
  return slot.values;
}

double SummatorySeries::psi_approx(std::uint64_t n) const { return prefix(kPsi).at(n); }
double SummatorySeries::mu_approx(std::uint64_t n) const { return prefix(kMu).at(n); }
double SummatorySeries::lambda_approx(std::uint64_t n) const { return prefix(kLambda).at(n); }
double SummatorySeries::lambda_over_n_approx(std::uint64_t n) const { return prefix(kLambdaOverN).at(n); }

HPReal convolution_residual(const SummatorySeries& s, std::uint64_t x_check, int digits) {
  if (x_check > s.x_max()) throw std::out_of_range("convolution_residual: x_check beyond sieve limit");
  const int wd = digits + 10;
  std::vector<HPReal> lam(x_check + 1, HPReal(wd));
  for (std::uint64_t m = 2; m <= x_check; ++m) {
    const std::uint64_t q = s.lambda_base(m);
    if (q != 1) lam[m] = log_of(static_cast<std::int64_t>(q), wd);
  }
  HPReal worst(wd);
  for (std::uint64_t n = 1; n <= x_check; ++n) {
    HPReal lhs = s.member(n) ? log_of(static_cast<std::int64_t>(n), wd) : HPReal(wd);
    HPReal rhs(wd);
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0 && s.member(d)) rhs += lam[n / d];
    }
    worst = max(worst, abs(lhs - rhs));
  }
  return worst.with_digits(digits);
}

HPReal lambda_from_psi_residual(const SummatorySeries& s, std::uint64_t x_check, int digits) {
  if (x_check > s.x_max()) throw std::out_of_range("lambda_from_psi_residual: x_check beyond sieve limit");
  const int wd = digits + 10;
  std::vector<HPReal> psi(x_check + 1, HPReal(wd));
  std::vector<HPReal> lam(x_check + 1, HPReal(wd));
  for (std::uint64_t n = 1; n <= x_check; ++n) {
    psi[n] = psi[n - 1];
    lam[n] = lam[n - 1];
    const std::uint64_t q = s.lambda_base(n);
    if (q != 1) psi[n] += log_of(static_cast<std::int64_t>(q), wd);
    if (s.member(n) && n > 1) lam[n] += log_of(static_cast<std::int64_t>(n), wd);
  }
  HPReal worst(wd);
  for (std::uint64_t x = 1; x <= x_check; ++x) {
    HPReal rhs(wd);
    for (std::uint64_t n = 1; n <= x; ++n) {
      if (s.member(n)) rhs += psi[x / n];
    }
    worst = max(worst, abs(lam[x] - rhs));
  }
  return worst.with_digits(digits);
}

HPReal step_integral_t_log2(const std::vector<HPReal>& values, double a, double b, int digits) {
  if (a < 2 || b < a) throw std::domain_error("step_integral_t_log2: need 2 <= a <= b");
  if (static_cast<double>(values.size()) <= std::floor(b) && std::floor(b) != b) {
    throw std::out_of_range("step_integral_t_log2: step values do not cover [a, b]");
  }
  const int wd = digits + 10;
  HPReal sum(wd);
  const auto first = static_cast<std::uint64_t>(std::floor(a));
  for (std::uint64_t n = first; static_cast<double>(n) < b; ++n) {
    const double lo = std::max(a, static_cast<double>(n));
    const double hi = std::min(b, static_cast<double>(n + 1));
    if (hi <= lo) continue;
    const HPReal& f = values.at(n);
    if (f.is_zero()) continue;
    // ∫ dt/(t log² t) = −1/log t
    const HPReal inv_lo = HPReal(1L, wd) / log(HPReal(lo, wd));
    const HPReal inv_hi = HPReal(1L, wd) / log(HPReal(hi, wd));
    sum += f * (inv_lo - inv_hi);
  }
  return sum.with_digits(digits);
}

HPReal m_from_lambda_residual(const SummatorySeries& s, std::uint64_t x_check, int digits) {
  if (x_check > s.x_max()) throw std::out_of_range("m_from_lambda_residual: x_check beyond sieve limit");
  const int wd = digits + 10;
  const HPReal one(1L, wd);
  HPReal lam(wd);
  HPReal integral(wd);
  HPReal worst(wd);
  std::uint64_t count = s.member(1) ? 1 : 0;
  for (std::uint64_t x = 2; x <= x_check; ++x) {
    const HPReal log_x = log_of(static_cast<std::int64_t>(x), wd);
    // extend ∫ over [x−1, x) with the value λ(x−1)
    if (x > 2 && !lam.is_zero()) integral += lam * (one / log_of(static_cast<std::int64_t>(x - 1), wd) - one / log_x);
    if (s.member(x)) {
      lam += log_x;
      ++count;
    }
    const HPReal rhs = lam / log_x + integral + one;
    worst = max(worst, abs(HPReal(static_cast<long>(count), wd) - rhs));
  }
  return worst.with_digits(digits);
}

namespace {

std::string format_x(double x, int digits) {
  if (x == std::floor(x) && x < 1e18) return std::to_string(static_cast<std::uint64_t>(x));
  return HPReal(x, digits).to_string(17);
}

}  // namespace

void export_grid(const SummatorySeries& s, const std::vector<double>& xs, int digits, GridFormat format,
                 std::ostream& out) {
  struct Row {
    std::string psi, mu, lambda;
    std::uint64_t m = 0;
  };
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<Row> rows(xs.size());

  // one ascending sweep: running ψ, μ, λ with cached prime logarithms
  const int wd = digits + 5;
  const HPReal one(1L, wd);
  HPReal psi(wd), mu(wd), lam(wd);
  std::unordered_map<std::uint64_t, HPReal> logs;
  auto log_p = [&](std::uint64_t p) -> const HPReal& {
    auto it = logs.find(p);
    if (it == logs.end()) it = logs.emplace(p, log_of(static_cast<std::int64_t>(p), wd)).first;
    return it->second;
  };
  const auto& support = s.lambda_support();
  const std::uint32_t* spf = s.tables().spf_data();
  std::size_t si = 0;
  std::uint64_t n = 0;
  for (const std::size_t i : order) {
    const std::uint64_t top = xs[i] < 1 ? 0 : static_cast<std::uint64_t>(std::floor(xs[i]));
    rows[i].m = s.m_f(xs[i]);  // range check
    while (n < top) {
      ++n;
      for (; si < support.n.size() && support.n[si] == n; ++si) psi += log_p(support.q[si]);
      if (s.member(n)) {
        mu += one / HPReal(static_cast<long>(n), wd);
        for (std::uint64_t m = n; m > 1; m /= spf[m]) lam += log_p(spf[m]);
      }
    }
    rows[i].psi = psi.with_digits(digits).to_string();
    rows[i].mu = mu.with_digits(digits).to_string();
    rows[i].lambda = lam.with_digits(digits).to_string();
  }

  if (format == GridFormat::csv) {
    out << "x,psi_f,mu_f,lambda_f,M_f\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out << format_x(xs[i], digits) << ',' << rows[i].psi << ',' << rows[i].mu << ',' << rows[i].lambda << ','
          << rows[i].m << '\n';
    }
    return;
  }
  nlohmann::json js = nlohmann::json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    js.push_back({{"x", format_x(xs[i], digits)},
                  {"psi_f", rows[i].psi},
                  {"mu_f", rows[i].mu},
                  {"lambda_f", rows[i].lambda},
                  {"M_f", std::to_string(rows[i].m)}});
  }
  out << nlohmann::json{{"spec", s.spec().name()}, {"rows", js}}.dump(2) << '\n';
}

}  // namespace chebias
