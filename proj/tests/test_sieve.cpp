#include <doctest.h>

#include <cstdio>
#include <numeric>
#include <random>

#include "chebias/kernels.hpp"
#include "chebias/sieve.hpp"

using namespace chebias;

namespace {

std::uint64_t spf_naive(std::uint64_t n) {
  if (n < 2) return n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return p;
  }
  return n;
}

bool squarefree_naive(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return n >= 1;
}

const auto& small() {
  static auto t = SieveTables::build(200000);
  return *t;
}

}  // namespace

TEST_CASE("smallest prime factors match trial division") {
  const auto& t = small();
  for (std::uint64_t n = 0; n <= 5000; ++n) CHECK(t.spf(n) == spf_naive(n));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> d(2, 200000);
  for (int i = 0; i < 2000; ++i) {
    const auto n = d(rng);
    CHECK(t.spf(n) == spf_naive(n));
    CHECK(t.is_prime(n) == (spf_naive(n) == n));
  }
}

TEST_CASE("counting functions") {
  const auto& t = small();
  CHECK(t.pi_count(100, 1, 0) == 25);
  CHECK(t.pi_count(100, 3, 1) == 11);
  CHECK(t.pi_count(100, 3, 2) == 13);
  CHECK(t.pi_count(100, 4, 1) == 11);
  CHECK(t.pi_count(100, 4, 3) == 13);
  CHECK(t.count_squarefree(10) == 7);
  CHECK(t.count_squarefree_odd(25) == 11);
  CHECK(t.count_squarefree_coprime3(10) == 5);
  CHECK(t.count_squarefree(0) == 0);

  std::uint64_t q = 0, qo = 0, q3 = 0;
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    const bool sf = squarefree_naive(n);
    q += sf;
    qo += sf && n % 2;
    q3 += sf && n % 3;
    CHECK(t.is_squarefree(n) == sf);
    if (n % 997 == 0) {
      CHECK(t.count_squarefree(n) == q);
      CHECK(t.count_squarefree_odd(n) == qo);
      CHECK(t.count_squarefree_coprime3(n) == q3);
    }
  }
}

TEST_CASE("primes by class and prime powers") {
  const auto& t = small();
  CHECK(t.primes_in_class(3, 2).front() == 2);
  CHECK(t.primes_in_class(4, 1).front() == 5);
  CHECK(t.primes_in_class(1, 0).size() == t.primes().size());
  const auto pp = t.prime_powers(3, 2, 10);
  std::vector<std::uint64_t> v;
  for (const auto& p : pp) v.push_back(p.value);
  CHECK(v == std::vector<std::uint64_t>{2, 4, 5, 8});
  v.clear();
  for (const auto& p : t.prime_powers(4, 1, 30)) v.push_back(p.value);
  CHECK(v == std::vector<std::uint64_t>{5, 13, 17, 25, 29});
  const auto p9 = t.prime_powers(4, 3, 9);
  CHECK(p9.back() == PrimePower{9, 3, 2});
  CHECK_THROWS_AS(t.primes_in_class(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(t.prime_powers(3, 2, 300000), std::out_of_range);
}

TEST_CASE("segmented and unsegmented builds are identical") {
  const std::uint64_t x = 300007;
  SieveOptions seg;
  seg.force_segmented = true;
  seg.segment_size = 4096;
  const auto a = SieveTables::build(x);
  const auto b = SieveTables::build(x, seg);
  SieveOptions serial;
  serial.exec = kernels::Exec::serial;
  serial.force_segmented = true;
  serial.segment_size = 1000;
  const auto c = SieveTables::build(x, serial);
  CHECK(b->segment_size() == 4096);
  for (std::uint64_t n = 0; n <= x; ++n) {
    if (a->spf(n) != b->spf(n) || a->spf(n) != c->spf(n)) {
      FAIL("spf differs at " << n);
    }
  }
  CHECK(a->count_squarefree(x) == b->count_squarefree(x));
  CHECK(a->count_squarefree_odd(x) == c->count_squarefree_odd(x));
  CHECK(a->primes() == b->primes());
}

TEST_CASE("save and load round trip") {
  const auto a = SieveTables::build(50000);
  const std::string path = "sieve_roundtrip_test.bin";
  a->save(path);
  const auto b = SieveTables::load(path);
  CHECK(b->x_max() == 50000);
  CHECK(b->primes() == a->primes());
  CHECK(b->count_squarefree(50000) == a->count_squarefree(50000));
  std::remove(path.c_str());

  std::FILE* f = std::fopen(path.c_str(), "wb");
  std::fputs("not a sieve", f);
  std::fclose(f);
  CHECK_THROWS(SieveTables::load(path));
  std::remove(path.c_str());
  CHECK_THROWS(SieveTables::load("does/not/exist.bin"));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(SieveTables::build(1), std::domain_error);
  CHECK_THROWS_AS(SieveTables::build(kSieveMax + 1), std::domain_error);
  SieveOptions tiny;
  tiny.memory_budget = 1 << 20;
  try {
    SieveTables::build(10'000'000, tiny);
    FAIL("expected a resource error");
  } catch (const SieveResourceError& e) {
    CHECK(e.budget_bytes() == (1u << 20));
    CHECK(e.required_bytes() > e.budget_bytes());
    CHECK(e.advisory_x_max() < 10'000'000);
    CHECK(SieveTables::estimate_bytes(e.advisory_x_max()) <= e.budget_bytes());
  }
  CHECK_THROWS_AS(small().spf(200001), std::out_of_range);
  CHECK_THROWS_AS(small().count_squarefree(200001), std::out_of_range);
}

TEST_CASE("rank bits") {
  RankBits r(1000);
  std::vector<int> ref(1000);
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    const int k = static_cast<int>(rng() % 1000);
    r.set(k);
    ref[k] = 1;
  }
  r.finalize();
  int run = 0;
  for (int i = 0; i < 1000; ++i) {
    run += ref[i];
    CHECK(r.test(i) == static_cast<bool>(ref[i]));
    CHECK(r.rank(i) == static_cast<std::uint64_t>(run));
  }
}

TEST_CASE("kernels: first_true and extremum agree across exec modes") {
  std::vector<double> f(100000);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (auto& x : f) x = u(rng);
  f[777] = 5;
  f[90000] = 5;  // tie: smallest index wins
  f[4242] = -5;
  for (auto ex : {kernels::Exec::serial, kernels::Exec::parallel}) {
    const auto e = kernels::extremum(0, f.size(), [&](std::uint64_t i) { return f[i]; },
                                     [&](std::uint64_t i) { return f[i]; }, ex);
    CHECK(e.max_index == 777);
    CHECK(e.min_index == 4242);
    const auto hit = kernels::first_true(0, f.size(), [&](std::uint64_t i) { return f[i] > 4; }, ex);
    REQUIRE(hit);
    CHECK(*hit == 777);
    CHECK_FALSE(kernels::first_true(0, f.size(), [&](std::uint64_t i) { return f[i] > 6; }, ex));
  }
}
