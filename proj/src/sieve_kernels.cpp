#include <cmath>

#include "chebias/kernels.hpp"

namespace chebias::kernels {

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

std::vector<std::uint32_t> small_primes(std::uint32_t n) {
  std::vector<std::uint32_t> primes;
  if (n < 2) return primes;
  std::vector<char> composite(n + 1, 0);
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= n; m += p) composite[m] = 1;
  }
  return primes;
}

void spf_segment(const std::vector<std::uint32_t>& base_primes, std::uint64_t lo, std::uint64_t hi,
                 std::uint32_t* out) {
  std::fill(out, out + (hi - lo), 0u);
  for (const std::uint32_t p32 : base_primes) {
    const std::uint64_t p = p32;
    if (p * p >= hi) break;
    std::uint64_t m = std::max(p * p, (lo + p - 1) / p * p);
    for (; m < hi; m += p) {
      if (out[m - lo] == 0) out[m - lo] = p32;
    }
  }
  for (std::uint64_t n = lo; n < hi; ++n) {
    if (out[n - lo] == 0) out[n - lo] = static_cast<std::uint32_t>(n);
  }
  if (lo == 0) out[0] = 0;
}

void spf_fill(std::uint64_t x_max, std::uint64_t segment, std::uint32_t* spf, Exec exec) {
  const std::uint64_t end = x_max + 1;
  const auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(x_max))) + 1;
  const std::vector<std::uint32_t> base = small_primes(root);
  if (segment == 0 || segment >= end) {
    spf_segment(base, 0, end, spf);
    return;
  }
  const std::uint64_t count = (end + segment - 1) / segment;
  if (exec == Exec::serial) {
    for (std::uint64_t s = 0; s < count; ++s) {
      const std::uint64_t lo = s * segment;
      spf_segment(base, lo, std::min(end, lo + segment), spf + lo);
    }
    return;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(count); ++s) {
    const std::uint64_t lo = static_cast<std::uint64_t>(s) * segment;
    spf_segment(base, lo, std::min(end, lo + segment), spf + lo);
  }
}

namespace {

inline std::uint8_t squarefree_at(const std::uint32_t* spf, std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t last = 0;
  while (n > 1) {
    const std::uint64_t p = spf[n];
    if (p == last) return 0;
    last = p;
    n /= p;
  }
  return 1;
}

}  // namespace

void squarefree_from_spf(const std::uint32_t* spf, std::uint64_t x_max, std::uint8_t* flags, Exec exec) {
  if (exec == Exec::serial) {
    for (std::uint64_t n = 0; n <= x_max; ++n) flags[n] = squarefree_at(spf, n);
    return;
  }
#pragma omp parallel for schedule(static, 1 << 14)
  for (std::int64_t n = 0; n <= static_cast<std::int64_t>(x_max); ++n) {
    flags[n] = squarefree_at(spf, static_cast<std::uint64_t>(n));
  }
}

}  // namespace chebias::kernels
