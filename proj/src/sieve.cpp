#include "chebias/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace chebias {

namespace {

constexpr char kMagic[8] = {'C', 'H', 'B', 'S', 'I', 'E', 'V', 'E'};
constexpr std::uint32_t kFormatVersion = 1;

struct FileHeader {
  char magic[8];
  std::uint32_t version;
  std::uint32_t reserved;
  std::uint64_t x_max;
  std::uint64_t segment;
};

std::string describe_bytes(std::uint64_t b) { return std::to_string(b >> 20) + " MiB"; }

}  // namespace

SieveResourceError::SieveResourceError(std::uint64_t required, std::uint64_t budget, std::uint64_t advisory_x_max,
                                       std::uint64_t advisory_segment)
    : std::runtime_error("sieve tables need " + describe_bytes(required) + " but the memory budget is " +
                         describe_bytes(budget) + "; use x_max <= " + std::to_string(advisory_x_max) +
                         " (segment size " + std::to_string(advisory_segment) + ") or raise the budget"),
      required_(required),
      budget_(budget),
      advisory_x_max_(advisory_x_max),
      advisory_segment_(advisory_segment) {}

RankBits::RankBits(std::uint64_t size) : words_((size + 64) / 64, 0) {}

void RankBits::finalize() {
  prefix_.resize(words_.size());
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    prefix_[w] = static_cast<std::uint32_t>(acc);
    acc += static_cast<std::uint64_t>(std::popcount(words_[w]));
  }
}

std::uint64_t RankBits::rank(std::uint64_t i) const {
  const std::uint64_t w = i >> 6;
  const unsigned bit = static_cast<unsigned>(i & 63);
  const std::uint64_t mask = bit == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (bit + 1)) - 1);
  return prefix_[w] + static_cast<std::uint64_t>(std::popcount(words_[w] & mask));
}

std::uint64_t SieveTables::estimate_bytes(std::uint64_t x_max) {
  const double n = static_cast<double>(x_max) + 1;
  const double prime_bytes = n > 10 ? 8.0 * n / (std::log(n) - 1.1) : 64.0;
  // spf + transient byte flags + three rank bitsets + prime lists
  return static_cast<std::uint64_t>(4.0 * n + n + 3.0 * (n / 8 + n / 16) + prime_bytes);
}

std::shared_ptr<const SieveTables> SieveTables::build(std::uint64_t x_max, const SieveOptions& options) {
  if (x_max < 2 || x_max > kSieveMax) {
    throw std::domain_error("sieve: x_max must lie in [2, 10^9], got " + std::to_string(x_max));
  }
  const std::uint64_t need = estimate_bytes(x_max);
  if (need > options.memory_budget) {
    std::uint64_t fit = x_max;
    while (fit > 2 && estimate_bytes(fit) > options.memory_budget) fit = fit / 10 * 9;
    const std::uint64_t seg = std::min<std::uint64_t>(kDefaultSegment, std::bit_floor(std::max<std::uint64_t>(fit / 16, 1024)));
    throw SieveResourceError(need, options.memory_budget, fit, seg);
  }
  std::shared_ptr<SieveTables> t(new SieveTables());
  t->x_max_ = x_max;
  std::uint64_t segment = options.segment_size;
  if (segment == 0 && (options.force_segmented || x_max > kSegmentThreshold)) segment = kDefaultSegment;
  t->segment_ = segment;
  t->spf_.resize(x_max + 1);
  kernels::spf_fill(x_max, segment, t->spf_.data(), options.exec);
  t->derive(options.exec);
  return t;
}

void SieveTables::derive(kernels::Exec exec) {
  const std::uint64_t end = x_max_ + 1;
  {
    std::vector<std::uint8_t> flags(end);
    kernels::squarefree_from_spf(spf_.data(), x_max_, flags.data(), exec);
    squarefree_ = RankBits(end);
    squarefree_odd_ = RankBits(end);
    squarefree_coprime3_ = RankBits(end);
    for (std::uint64_t n = 1; n < end; ++n) {
      if (!flags[n]) continue;
      squarefree_.set(n);
      if (n & 1) squarefree_odd_.set(n);
      if (n % 3 != 0) squarefree_coprime3_.set(n);
    }
  }
  squarefree_.finalize();
  squarefree_odd_.finalize();
  squarefree_coprime3_.finalize();

  primes_.clear();
  class31_.clear();
  class32_.clear();
  class41_.clear();
  class43_.clear();
  for (std::uint64_t n = 2; n < end; ++n) {
    if (spf_[n] != n) continue;
    const auto p = static_cast<std::uint32_t>(n);
    primes_.push_back(p);
    if (p % 3 == 1) class31_.push_back(p);
    if (p % 3 == 2) class32_.push_back(p);
    if (p % 4 == 1) class41_.push_back(p);
    if (p % 4 == 3) class43_.push_back(p);
  }
}

void SieveTables::check_range(std::uint64_t x, const char* what) const {
  if (x > x_max_) {
    throw std::out_of_range(std::string(what) + ": argument " + std::to_string(x) + " exceeds sieve limit " +
                            std::to_string(x_max_));
  }
}

std::uint32_t SieveTables::spf(std::uint64_t n) const {
  check_range(n, "spf");
  return spf_[n];
}

bool SieveTables::is_prime(std::uint64_t n) const {
  check_range(n, "is_prime");
  return n >= 2 && spf_[n] == n;
}

bool SieveTables::is_squarefree(std::uint64_t n) const {
  check_range(n, "is_squarefree");
  return squarefree_.test(n);
}

std::uint64_t SieveTables::count_squarefree(std::uint64_t x) const {
  check_range(x, "count_squarefree");
  return squarefree_.rank(x);
}

std::uint64_t SieveTables::count_squarefree_odd(std::uint64_t x) const {
  check_range(x, "count_squarefree_odd");
  return squarefree_odd_.rank(x);
}

std::uint64_t SieveTables::count_squarefree_coprime3(std::uint64_t x) const {
  check_range(x, "count_squarefree_coprime3");
  return squarefree_coprime3_.rank(x);
}

const std::vector<std::uint32_t>& SieveTables::primes_in_class(int d, int a) const {
  if (d == 1) return primes_;
  if (d == 3 && a == 1) return class31_;
  if (d == 3 && a == 2) return class32_;
  if (d == 4 && a == 1) return class41_;
  if (d == 4 && a == 3) return class43_;
  throw std::invalid_argument("sieve: residue class " + std::to_string(a) + " mod " + std::to_string(d) +
                              " is not one of 1,2 mod 3 or 1,3 mod 4");
}

std::vector<PrimePower> SieveTables::prime_powers(int d, int a, std::uint64_t x) const {
  check_range(x, "prime_powers");
  const auto& ps = primes_in_class(d, a);
  std::vector<PrimePower> out;
  for (const std::uint32_t p : ps) {
    if (p > x) break;
    std::uint64_t q = p;
    for (int r = 1;; ++r) {
      out.push_back({q, p, r});
      if (q > x / p) break;
      q *= p;
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& u, const PrimePower& v) { return u.value < v.value; });
  return out;
}

std::uint64_t SieveTables::pi_count(std::uint64_t x, int d, int a) const {
  check_range(x, "pi_count");
  const auto& ps = primes_in_class(d, a);
  return static_cast<std::uint64_t>(std::upper_bound(ps.begin(), ps.end(), x) - ps.begin());
}

void SieveTables::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("sieve: cannot open '" + path + "' for writing");
  FileHeader h{};
  std::memcpy(h.magic, kMagic, sizeof kMagic);
  h.version = kFormatVersion;
  h.x_max = x_max_;
  h.segment = segment_;
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  out.write(reinterpret_cast<const char*>(spf_.data()), static_cast<std::streamsize>(spf_.size() * sizeof(std::uint32_t)));
  if (!out) throw std::runtime_error("sieve: write to '" + path + "' failed");
}

std::shared_ptr<const SieveTables> SieveTables::load(const std::string& path, const SieveOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sieve: cannot open '" + path + "'");
  FileHeader h{};
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!in || std::memcmp(h.magic, kMagic, sizeof kMagic) != 0) {
    throw std::runtime_error("sieve: '" + path + "' is not a sieve table dump");
  }
  if (h.version != kFormatVersion) {
    throw std::runtime_error("sieve: unsupported format version " + std::to_string(h.version));
  }
  if (h.x_max < 2 || h.x_max > kSieveMax) throw std::runtime_error("sieve: corrupt header (x_max)");
  if (estimate_bytes(h.x_max) > options.memory_budget) {
    throw SieveResourceError(estimate_bytes(h.x_max), options.memory_budget, 0, kDefaultSegment);
  }
  std::shared_ptr<SieveTables> t(new SieveTables());
  t->x_max_ = h.x_max;
  t->segment_ = h.segment;
  t->spf_.resize(h.x_max + 1);
  in.read(reinterpret_cast<char*>(t->spf_.data()), static_cast<std::streamsize>(t->spf_.size() * sizeof(std::uint32_t)));
  if (!in) throw std::runtime_error("sieve: '" + path + "' is truncated");
  t->derive(options.exec);
  return t;
}

}  // namespace chebias
