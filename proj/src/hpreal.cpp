#include "chebias/hpreal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chebias {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

int result_digits(const HPReal& a, const HPReal& b) { return std::max(a.digits(), b.digits()); }

}  // namespace

mpfr_prec_t bits_for_digits(int digits) {
  // log2(10) = 3.3219..., plus 8 guard bits.
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 8;
}

HPReal::HPReal() : HPReal(kDefaultDigits) {}

HPReal::HPReal(int digits) : digits_(digits) {
  mpfr_init2(value_, bits_for_digits(digits));
  mpfr_set_zero(value_, 1);
}

HPReal::HPReal(long value, int digits) : HPReal(digits) { mpfr_set_si(value_, value, kRnd); }

HPReal::HPReal(double value, int digits) : HPReal(digits) { mpfr_set_d(value_, value, kRnd); }

HPReal::HPReal(const HPReal& other) : digits_(other.digits_) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRnd);
}

HPReal::HPReal(HPReal&& other) noexcept : HPReal(other.digits_) { mpfr_swap(value_, other.value_); }

HPReal& HPReal::operator=(const HPReal& other) {
  if (this != &other) {
    reset_precision(other.digits_);
    mpfr_set(value_, other.value_, kRnd);
  }
  return *this;
}

HPReal& HPReal::operator=(HPReal&& other) noexcept {
  if (this != &other) {
    mpfr_swap(value_, other.value_);
    std::swap(digits_, other.digits_);
  }
  return *this;
}

HPReal::~HPReal() { mpfr_clear(value_); }

void HPReal::reset_precision(int digits) {
  if (digits != digits_ || mpfr_get_prec(value_) != bits_for_digits(digits)) {
    mpfr_prec_round(value_, bits_for_digits(digits), kRnd);
    digits_ = digits;
  }
}

HPReal HPReal::parse(std::string_view text, int digits) {
  HPReal r(digits);
  std::string s(text);
  if (s.empty() || mpfr_set_str(r.value_, s.c_str(), 10, kRnd) != 0) {
    throw std::invalid_argument("HPReal::parse: not a decimal number: '" + s + "'");
  }
  return r;
}

HPReal HPReal::ratio(long num, long den, int digits) {
  if (den == 0) throw std::domain_error("HPReal::ratio: zero denominator");
  HPReal r(num, digits + 5);
  r /= den;
  return r.with_digits(digits);
}

HPReal HPReal::with_digits(int digits) const {
  HPReal r(digits);
  mpfr_set(r.value_, value_, kRnd);
  return r;
}

double HPReal::to_double() const { return mpfr_get_d(value_, kRnd); }
long double HPReal::to_long_double() const { return mpfr_get_ld(value_, kRnd); }
bool HPReal::is_zero() const { return mpfr_zero_p(value_) != 0; }
int HPReal::sign() const { return mpfr_sgn(value_); }

std::string HPReal::to_string(int sig, Rounding mode) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(value_)) return "0";
  sig = std::max(sig, 1);
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(sig), value_,
                           mode == Rounding::nearest ? MPFR_RNDN : MPFR_RNDZ);
  std::string mant(raw);
  mpfr_free_str(raw);
  bool negative = false;
  if (!mant.empty() && mant[0] == '-') {
    negative = true;
    mant.erase(0, 1);
  }
  // value = 0.mant * 10^exp10
  std::string out;
  const long e = static_cast<long>(exp10);
  if (e <= 0 && e > -6) {
    out = "0." + std::string(static_cast<size_t>(-e), '0') + mant;
  } else if (e > 0 && e <= 15) {
    if (static_cast<size_t>(e) >= mant.size()) {
      out = mant + std::string(static_cast<size_t>(e) - mant.size(), '0');
    } else {
      out = mant.substr(0, static_cast<size_t>(e)) + "." + mant.substr(static_cast<size_t>(e));
    }
  } else {
    out = mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(e - 1);
  }
  return negative ? "-" + out : out;
}

HPReal& HPReal::operator+=(const HPReal& rhs) {
  reset_precision(result_digits(*this, rhs));
  mpfr_add(value_, value_, rhs.value_, kRnd);
  return *this;
}

HPReal& HPReal::operator-=(const HPReal& rhs) {
  reset_precision(result_digits(*this, rhs));
  mpfr_sub(value_, value_, rhs.value_, kRnd);
  return *this;
}

HPReal& HPReal::operator*=(const HPReal& rhs) {
  reset_precision(result_digits(*this, rhs));
  mpfr_mul(value_, value_, rhs.value_, kRnd);
  return *this;
}

HPReal& HPReal::operator/=(const HPReal& rhs) {
  reset_precision(result_digits(*this, rhs));
  mpfr_div(value_, value_, rhs.value_, kRnd);
  return *this;
}

HPReal& HPReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRnd);
  return *this;
}

HPReal& HPReal::operator/=(long rhs) {
  if (rhs == 0) throw std::domain_error("HPReal: division by zero");
  mpfr_div_si(value_, value_, rhs, kRnd);
  return *this;
}

HPReal HPReal::operator-() const {
  HPReal r(*this);
  mpfr_neg(r.value_, r.value_, kRnd);
  return r;
}

bool operator==(const HPReal& a, const HPReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const HPReal& a, const HPReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

HPReal abs(const HPReal& x) {
  HPReal r(x);
  mpfr_abs(r.get_mutable(), x.get(), kRnd);
  return r;
}

HPReal sqrt(const HPReal& x) {
  if (x.sign() < 0) throw std::domain_error("sqrt of negative HPReal");
  HPReal r(x.digits());
  mpfr_sqrt(r.get_mutable(), x.get(), kRnd);
  return r;
}

HPReal cbrt(const HPReal& x) {
  HPReal r(x.digits());
  mpfr_cbrt(r.get_mutable(), x.get(), kRnd);
  return r;
}

HPReal exp(const HPReal& x) {
  HPReal r(x.digits());
  mpfr_exp(r.get_mutable(), x.get(), kRnd);
  return r;
}

HPReal log(const HPReal& x) {
  if (x.sign() <= 0) throw std::domain_error("log of non-positive HPReal");
  HPReal r(x.digits());
  mpfr_log(r.get_mutable(), x.get(), kRnd);
  return r;
}

HPReal log_of(std::int64_t n, int digits) {
  if (n <= 0) throw std::domain_error("log_of: non-positive argument");
  HPReal r(digits);
  mpfr_log_ui(r.get_mutable(), static_cast<unsigned long>(n), kRnd);
  return r;
}

HPReal pow(const HPReal& base, const HPReal& exponent) {
  HPReal r(std::max(base.digits(), exponent.digits()));
  mpfr_pow(r.get_mutable(), base.get(), exponent.get(), kRnd);
  return r;
}

HPReal pow(const HPReal& base, long exponent) {
  HPReal r(base.digits());
  mpfr_pow_si(r.get_mutable(), base.get(), exponent, kRnd);
  return r;
}

HPReal sin(const HPReal& x) {
  HPReal r(x.digits());
  mpfr_sin(r.get_mutable(), x.get(), kRnd);
  return r;
}

HPReal min(const HPReal& a, const HPReal& b) { return b < a ? b : a; }
HPReal max(const HPReal& a, const HPReal& b) { return a < b ? b : a; }

HPReal ten_to_minus(int k, int digits) {
  HPReal r(10L, digits);
  return pow(r, -static_cast<long>(k));
}

int agreeing_digits(const HPReal& a, const HPReal& b) {
  const int d = std::max(a.digits(), b.digits()) + 10;
  HPReal diff = abs(a.with_digits(d) - b.with_digits(d));
  if (diff.is_zero()) return 10000;
  HPReal scale = abs(b.with_digits(d));
  if (!scale.is_zero()) diff /= scale;
  const double lg = mpfr_get_d(log(diff).get(), MPFR_RNDN) / std::log(10.0);
  return static_cast<int>(std::floor(-lg));
}

}  // namespace chebias
