#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "chebias/multfun.hpp"
#include "chebias/numkernel.hpp"
#include "support.hpp"

using namespace chebias;

namespace {

std::shared_ptr<const SieveTables> tables() {
  static auto t = SieveTables::build(200000);
  return t;
}

// every prime factor ≡ a (mod d)
bool member_naive(std::uint64_t n, int d, int a) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      if (static_cast<int>(p % d) != a) return false;
      n /= p;
    }
  }
  return n == 1 || static_cast<int>(n % d) == a;
}

bool two_squares_naive(std::uint64_t n) {
  for (std::uint64_t a = 0; a * a <= n; ++a) {
    const auto b = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n - a * a)));
    for (std::uint64_t c = b > 0 ? b - 1 : 0; c <= b + 1; ++c) {
      if (a * a + c * c == n) return true;
    }
  }
  return false;
}

double von_mangoldt(std::uint64_t n) {
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0;
  }
  return 0;
}

}  // namespace

TEST_CASE("spec parsing and names") {
  CHECK(SemigroupSpec::parse("g_3_1") == SemigroupSpec::residue_class(3, 1));
  CHECK(SemigroupSpec::parse("g{4,3}") == SemigroupSpec::residue_class(4, 3));
  CHECK(SemigroupSpec::parse("4,1") == SemigroupSpec::residue_class(4, 1));
  CHECK(SemigroupSpec::parse("B1") == SemigroupSpec::sum_of_two_squares());
  CHECK(SemigroupSpec::parse("one") == SemigroupSpec::all_integers());
  CHECK(SemigroupSpec::residue_class(3, 2).name() == "g_3_2");
  CHECK(SemigroupSpec::residue_class(4, 1).tau_den() == 2);
  CHECK(SemigroupSpec::all_integers().tau_den() == 1);
  CHECK_THROWS_AS(SemigroupSpec::residue_class(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(SemigroupSpec::residue_class(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(SemigroupSpec::parse("g_9"), std::invalid_argument);
}

TEST_CASE("membership against brute force") {
  const auto g41 = SemigroupSpec::residue_class(4, 1), g32 = SemigroupSpec::residue_class(3, 2);
  const auto b1 = SemigroupSpec::sum_of_two_squares();
  const SummatorySeries s41(tables(), g41), s32(tables(), g32), sb(tables(), b1);
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    CHECK(s41.member(n) == member_naive(n, 4, 1));
    CHECK(s32.member(n) == member_naive(n, 3, 2));
    CHECK(sb.member(n) == two_squares_naive(n));
    CHECK(member(n, g41) == s41.member(n));
  }
  CHECK(s41.m_f(20) == 4);  // 1, 5, 13, 17
  CHECK(sb.m_f(10) == 7);   // 1, 2, 4, 5, 8, 9, 10
  const SummatorySeries s43(tables(), SemigroupSpec::residue_class(4, 3));
  CHECK(s43.m_f(20) == 6);  // 1, 3, 7, 9, 11, 19
}

TEST_CASE("generalized von Mangoldt values") {
  const auto b1 = SemigroupSpec::sum_of_two_squares();
  CHECK(lambda_base(9, b1) == 9);   // 9 = 3², generator 3² contributes log 3 twice
  CHECK(lambda_base(81, b1) == 9);
  CHECK(agreeing_digits(lambda_f(9, b1, 30), log_of(3, 30) * 2L) >= 29);
  CHECK(lambda_base(27, b1) == 1);
  CHECK(lambda_base(8, b1) == 2);
  CHECK(lambda_base(7, SemigroupSpec::residue_class(3, 1)) == 7);
  CHECK(lambda_base(5, SemigroupSpec::residue_class(3, 1)) == 1);
  CHECK(lambda_base(12, SemigroupSpec::all_integers()) == 1);
  const SummatorySeries s(tables(), SemigroupSpec::residue_class(3, 2));
  // ψ_{g_{3,2}}(10) = log 2 + log 2 + log 5 + log 2 = log 40
  CHECK(agreeing_digits(s.psi_f(10, 40), log_of(40, 40)) >= 39);
}

TEST_CASE("summatory functions against direct sums") {
  for (const auto& spec : {SemigroupSpec::residue_class(3, 1), SemigroupSpec::residue_class(4, 3),
                           SemigroupSpec::sum_of_two_squares(), SemigroupSpec::all_integers()}) {
    const SummatorySeries s(tables(), spec);
    double psi = 0, mu = 0, lam = 0, lon = 0;
    for (std::uint64_t n = 1; n <= 3000; ++n) {
      const double L = std::log(static_cast<double>(lambda_base(n, spec)));
      psi += L;
      lon += L / static_cast<double>(n);
      if (member(n, spec)) {
        mu += 1.0 / static_cast<double>(n);
        lam += std::log(static_cast<double>(n));
      }
      if (n % 499 == 0) {
        CHECK(s.psi_f(static_cast<double>(n), 30).to_double() == doctest::Approx(psi).epsilon(1e-12));
        CHECK(s.mu_f(static_cast<double>(n), 30).to_double() == doctest::Approx(mu).epsilon(1e-12));
        CHECK(s.lambda_sum(static_cast<double>(n), 30).to_double() == doctest::Approx(lam).epsilon(1e-12));
        CHECK(s.lambda_over_n(static_cast<double>(n), 30).to_double() == doctest::Approx(lon).epsilon(1e-12));
        CHECK(s.psi_approx(n) == doctest::Approx(psi).epsilon(1e-12));
        CHECK(s.mu_approx(n) == doctest::Approx(mu).epsilon(1e-12));
        CHECK(s.lambda_approx(n) == doctest::Approx(lam).epsilon(1e-12));
        CHECK(s.lambda_over_n_approx(n) == doctest::Approx(lon).epsilon(1e-12));
      }
    }
    CHECK(s.psi_f(2.5, 30).to_double() == doctest::Approx(s.psi_f(2, 30).to_double()));
    CHECK_THROWS_AS(s.psi_f(200001, 30), std::out_of_range);
  }
}

TEST_CASE("identity residuals below 1e-40 at 50 digits") {
  for (const auto& spec : {SemigroupSpec::residue_class(3, 2), SemigroupSpec::residue_class(4, 1),
                           SemigroupSpec::sum_of_two_squares()}) {
    const SummatorySeries s(tables(), spec);
    const HPReal tol = ten_to_minus(40, 50);
    CHECK(convolution_residual(s, 1000, 50) < tol);
    CHECK(lambda_from_psi_residual(s, 1000, 50) < tol);
    CHECK(m_from_lambda_residual(s, 1000, 50) < tol);
  }
}

TEST_CASE("Lambda additivity off multiples of 3") {
  const SummatorySeries a(tables(), SemigroupSpec::residue_class(3, 1));
  const SummatorySeries b(tables(), SemigroupSpec::residue_class(3, 2));
  const SummatorySeries all(tables(), SemigroupSpec::all_integers());
  for (std::uint64_t n = 2; n <= 100000; ++n) {
    if (n % 3 == 0) continue;
    const std::uint64_t qa = a.lambda_base(n), qb = b.lambda_base(n), q = all.lambda_base(n);
    // at most one side is nonzero and it matches Λ(n)
    if (!(qa * qb == q || (qa == 1 && qb == q) || (qb == 1 && qa == q))) FAIL("additivity breaks at " << n);
  }
  for (std::uint64_t n : {2u, 4u, 7u, 49u, 97u, 1024u}) {
    CHECK(std::log(static_cast<double>(all.lambda_base(n))) == doctest::Approx(von_mangoldt(n)));
  }
}

TEST_CASE("lambda exponents reproduce lambda exactly") {
  const SummatorySeries s(tables(), SemigroupSpec::residue_class(4, 3));
  const auto ex = s.lambda_exponents(30);  // 3·7·9·11·19·21·23·27
  HPReal direct(40);
  for (std::uint64_t n : {3u, 7u, 9u, 11u, 19u, 21u, 23u, 27u}) direct += log_of(static_cast<std::int64_t>(n), 40);
  CHECK(agreeing_digits(log_combination(ex, 40), direct) >= 39);
  CHECK(agreeing_digits(s.lambda_sum(30, 40), direct) >= 39);
}

TEST_CASE("step integral of 1/(t log^2 t)") {
  std::vector<HPReal> ones(11, HPReal(1L, 40));
  // ∫_2^10 dt/(t log²t) = 1/log 2 − 1/log 10
  const HPReal v = step_integral_t_log2(ones, 2, 10, 40);
  CHECK(agreeing_digits(v, HPReal(1L, 40) / log_of(2, 40) - HPReal(1L, 40) / log_of(10, 40)) >= 38);
  CHECK(step_integral_t_log2(ones, 3, 3, 40).is_zero());
  CHECK_THROWS(step_integral_t_log2(ones, 1, 3, 40));
}

TEST_CASE("grid export") {
  const SummatorySeries s(tables(), SemigroupSpec::residue_class(4, 1));
  std::ostringstream csv;
  export_grid(s, {10, 100}, 20, GridFormat::csv, csv);
  const std::string text = csv.str();
  CHECK(text.rfind("x,psi_f,mu_f,lambda_f,M_f\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  std::ostringstream js;
  export_grid(s, {10, 100}, 20, GridFormat::json, js);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["spec"] == "g_4_1");
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][0]["M_f"] == "2");

  // unsorted sample points, values match the direct evaluations
  const std::vector<double> xs = {5000.5, 17, 199999, 1000};
  std::ostringstream js2;
  export_grid(s, xs, 30, GridFormat::json, js2);
  const auto rows = nlohmann::json::parse(js2.str())["rows"];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(agreeing_digits(hp(rows[i]["psi_f"]), s.psi_f(xs[i], 30)) >= 28);
    CHECK(agreeing_digits(hp(rows[i]["mu_f"]), s.mu_f(xs[i], 30)) >= 28);
    CHECK(agreeing_digits(hp(rows[i]["lambda_f"]), s.lambda_sum(xs[i], 30)) >= 28);
    CHECK(rows[i]["M_f"] == std::to_string(s.m_f(xs[i])));
  }
  std::ostringstream sink;
  CHECK_THROWS_AS(export_grid(s, {10, 300000}, 20, GridFormat::csv, sink), std::out_of_range);
}

TEST_CASE("property: psi is monotone and mu grows like C log^tau") {
  const SummatorySeries s(tables(), SemigroupSpec::residue_class(3, 1));
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::uint64_t> d(2, 199999);
  for (int i = 0; i < 500; ++i) {
    const auto x = d(rng), y = d(rng);
    if (x <= y) {
      CHECK(s.psi_approx(x) <= s.psi_approx(y));
      CHECK(s.mu_approx(x) <= s.mu_approx(y));
      CHECK(s.m_f(static_cast<double>(x)) <= s.m_f(static_cast<double>(y)));
    }
  }
}
