#pragma once

// Exact integer tables up to x_max: smallest prime factors, squarefree
// counting functions Q, Q_odd, Q_{χ₃}, primes and prime powers by residue class.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "chebias/kernels.hpp"

namespace chebias {

inline constexpr std::uint64_t kSieveMax = 1'000'000'000;
inline constexpr std::uint64_t kSegmentThreshold = 100'000'000;
inline constexpr std::uint64_t kDefaultSegment = 1u << 24;

struct SieveOptions {
  std::uint64_t segment_size = 0;  // 0: 2^24 above 10^8, one segment below
  bool force_segmented = false;
  std::uint64_t memory_budget = std::uint64_t{4} << 30;
  kernels::Exec exec = kernels::Exec::parallel;
};

class SieveResourceError : public std::runtime_error {
 public:
  SieveResourceError(std::uint64_t required, std::uint64_t budget, std::uint64_t advisory_x_max,
                     std::uint64_t advisory_segment);
  std::uint64_t required_bytes() const { return required_; }
  std::uint64_t budget_bytes() const { return budget_; }
  /// Largest x_max whose tables fit the budget.
  std::uint64_t advisory_x_max() const { return advisory_x_max_; }
  std::uint64_t advisory_segment_size() const { return advisory_segment_; }

 private:
  std::uint64_t required_, budget_, advisory_x_max_, advisory_segment_;
};

struct PrimePower {
  std::uint64_t value;  // p^r
  std::uint32_t p;
  int r;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Bitset with O(1) rank.
class RankBits {
 public:
  RankBits() = default;
  explicit RankBits(std::uint64_t size);
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void finalize();
  /// Number of set bits in [0, i].
  std::uint64_t rank(std::uint64_t i) const;
  std::uint64_t bytes() const { return words_.size() * 8 + prefix_.size() * 4; }

 private:
  std::vector<std::uint64_t> words_;
  std::vector<std::uint32_t> prefix_;
};

class SieveTables {
 public:
  static std::shared_ptr<const SieveTables> build(std::uint64_t x_max, const SieveOptions& options = {});
  /// Bytes a build of this size would hold.
  static std::uint64_t estimate_bytes(std::uint64_t x_max);

  std::uint64_t x_max() const { return x_max_; }
  std::uint64_t segment_size() const { return segment_; }

  std::uint32_t spf(std::uint64_t n) const;
  const std::uint32_t* spf_data() const { return spf_.data(); }
  bool is_prime(std::uint64_t n) const;
  bool is_squarefree(std::uint64_t n) const;

  std::uint64_t count_squarefree(std::uint64_t x) const;
  std::uint64_t count_squarefree_odd(std::uint64_t x) const;
  std::uint64_t count_squarefree_coprime3(std::uint64_t x) const;

  const std::vector<std::uint32_t>& primes() const { return primes_; }
  /// Primes p ≤ x_max with p ≡ a (mod d); d ∈ {3,4}, or d = 1 for all primes.
  const std::vector<std::uint32_t>& primes_in_class(int d, int a) const;
  std::vector<PrimePower> prime_powers(int d, int a, std::uint64_t x) const;
  std::uint64_t pi_count(std::uint64_t x, int d, int a) const;

  /// Versioned binary dump (magic, format version, x_max, spf table).
  void save(const std::string& path) const;
  static std::shared_ptr<const SieveTables> load(const std::string& path, const SieveOptions& options = {});

 private:
  SieveTables() = default;
  void derive(kernels::Exec exec);
  void check_range(std::uint64_t x, const char* what) const;

  std::uint64_t x_max_ = 0;
  std::uint64_t segment_ = 0;
  std::vector<std::uint32_t> spf_;
  RankBits squarefree_, squarefree_odd_, squarefree_coprime3_;
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint32_t> class31_, class32_, class41_, class43_;
};

}  // namespace chebias
