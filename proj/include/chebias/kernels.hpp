#pragma once

// Data-parallel integer kernels. Each kernel has a serial reference and an
// OpenMP variant selected by Exec; both return identical results.

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace chebias::kernels {

enum class Exec { serial, parallel };

void set_threads(int n);
int max_threads();

/// Smallest prime factor of every n in [lo, hi), written to out[n - lo].
/// `base_primes` must contain every prime ≤ √(hi−1). spf(0) = 0, spf(1) = 1.
void spf_segment(const std::vector<std::uint32_t>& base_primes, std::uint64_t lo, std::uint64_t hi,
                 std::uint32_t* out);

/// Fills spf[0..x_max] segment by segment (segment = 0: one segment).
void spf_fill(std::uint64_t x_max, std::uint64_t segment, std::uint32_t* spf, Exec exec);

/// Primes ≤ n by a plain sieve of Eratosthenes.
std::vector<std::uint32_t> small_primes(std::uint32_t n);

/// flags[n] = 1 iff n is squarefree, by repeated division with spf.
void squarefree_from_spf(const std::uint32_t* spf, std::uint64_t x_max, std::uint8_t* flags, Exec exec);

inline constexpr std::uint64_t kBlock = 1u << 15;

/// Smallest i in [lo, hi) with pred(i), or nullopt.
template <class Pred>
std::optional<std::uint64_t> first_true(std::uint64_t lo, std::uint64_t hi, const Pred& pred, Exec exec) {
  if (lo >= hi) return std::nullopt;
  if (exec == Exec::serial) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      if (pred(i)) return i;
    }
    return std::nullopt;
  }
  const std::uint64_t blocks = (hi - lo + kBlock - 1) / kBlock;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::uint64_t start = lo + static_cast<std::uint64_t>(b) * kBlock;
    std::uint64_t seen;
#pragma omp atomic read
    seen = best;
    if (start >= seen) continue;
    const std::uint64_t stop = std::min(hi, start + kBlock);
    for (std::uint64_t i = start; i < stop; ++i) {
      if (pred(i)) {
#pragma omp critical(chebias_first_true)
        best = std::min(best, i);
        break;
      }
    }
  }
  if (best == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return best;
}

struct Extremum {
  double max_value = -std::numeric_limits<double>::infinity();
  std::uint64_t max_index = 0;
  double min_value = std::numeric_limits<double>::infinity();
  std::uint64_t min_index = 0;
};

/// Max and min of value(i) for separate max/min candidate values over
/// [lo, hi); ties resolve to the smallest index.
template <class MaxFn, class MinFn>
Extremum extremum(std::uint64_t lo, std::uint64_t hi, const MaxFn& max_fn, const MinFn& min_fn, Exec exec) {
  auto merge = [](Extremum& into, const Extremum& e) {
    if (e.max_value > into.max_value || (e.max_value == into.max_value && e.max_index < into.max_index)) {
      into.max_value = e.max_value;
      into.max_index = e.max_index;
    }
    if (e.min_value < into.min_value || (e.min_value == into.min_value && e.min_index < into.min_index)) {
      into.min_value = e.min_value;
      into.min_index = e.min_index;
    }
  };
  auto scan = [&](std::uint64_t a, std::uint64_t b) {
    Extremum e;
    for (std::uint64_t i = a; i < b; ++i) {
      const double vmax = max_fn(i);
      const double vmin = min_fn(i);
      if (vmax > e.max_value) {
        e.max_value = vmax;
        e.max_index = i;
      }
      if (vmin < e.min_value) {
        e.min_value = vmin;
        e.min_index = i;
      }
    }
    return e;
  };
  if (lo >= hi) return {};
  if (exec == Exec::serial) return scan(lo, hi);
  const std::uint64_t blocks = (hi - lo + kBlock - 1) / kBlock;
  std::vector<Extremum> parts(blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::uint64_t start = lo + static_cast<std::uint64_t>(b) * kBlock;
    parts[static_cast<std::size_t>(b)] = scan(start, std::min(hi, start + kBlock));
  }
  Extremum total;
  for (const auto& p : parts) merge(total, p);
  return total;
}

}  // namespace chebias::kernels
