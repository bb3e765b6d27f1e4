#include <deque>
#include <mutex>
#include <stdexcept>

#include "chebias/numkernel.hpp"

namespace chebias {

namespace {

std::mutex g_bernoulli_mutex;
std::deque<mpq_class> g_bernoulli;  // deque: references stay valid as it grows

// Classical recurrence Σ_{k=0}^{m} C(m+1,k) B_k = 0.
void extend_to(int n) {
  if (g_bernoulli.empty()) g_bernoulli.emplace_back(1);
  while (static_cast<int>(g_bernoulli.size()) <= n) {
    const int m = static_cast<int>(g_bernoulli.size());
    if (m > 1 && m % 2 == 1) {
      g_bernoulli.emplace_back(0);
      continue;
    }
    mpz_class binom = 1;  // C(m+1, 0)
    mpq_class acc = 0;
    for (int k = 0; k < m; ++k) {
      acc += mpq_class(binom) * g_bernoulli[static_cast<size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    mpq_class bm = -acc / mpq_class(m + 1);
    bm.canonicalize();
    g_bernoulli.push_back(bm);
  }
}

}  // namespace

const mpq_class& bernoulli(int n) {
  if (n < 0) throw std::domain_error("bernoulli: negative index");
  std::lock_guard lock(g_bernoulli_mutex);
  extend_to(n);
  return g_bernoulli[static_cast<size_t>(n)];
}

}  // namespace chebias
