#pragma once

// Arbitrary-precision real numbers with an explicit decimal digit budget.
//
// HPReal is a value type over an MPFR float. Every value carries its working
// precision in significant decimal digits; binary operations produce a result
// at the larger of the two operand precisions, rounded to nearest.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace chebias {

inline constexpr int kDefaultDigits = 50;
inline constexpr int kMinDigits = 10;

/// Binary precision (bits) used to hold `digits` significant decimal digits.
mpfr_prec_t bits_for_digits(int digits);

enum class Rounding { nearest, toward_zero };

class HPReal {
 public:
  HPReal();  // zero at kDefaultDigits
  explicit HPReal(int digits);
  HPReal(long value, int digits);
  HPReal(double value, int digits);
  HPReal(const HPReal& other);
  HPReal(HPReal&& other) noexcept;
  HPReal& operator=(const HPReal& other);
  HPReal& operator=(HPReal&& other) noexcept;
  ~HPReal();

  /// Parses a decimal literal ("-1.25e-3"). Throws std::invalid_argument.
  static HPReal parse(std::string_view text, int digits);
  /// Exact rational num/den rounded at `digits`.
  static HPReal ratio(long num, long den, int digits);

  int digits() const { return digits_; }
  /// Copy re-rounded to a new digit budget.
  HPReal with_digits(int digits) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get_mutable() { return value_; }

  double to_double() const;
  long double to_long_double() const;
  bool is_zero() const;
  int sign() const;

  /// Decimal string with `sig` significant digits ("0.30121…", "-1.09…",
  /// scientific form below 1e-6 or above 1e15).
  std::string to_string(int sig, Rounding mode = Rounding::nearest) const;
  std::string to_string() const { return to_string(digits_); }

  HPReal& operator+=(const HPReal& rhs);
  HPReal& operator-=(const HPReal& rhs);
  HPReal& operator*=(const HPReal& rhs);
  HPReal& operator/=(const HPReal& rhs);
  HPReal& operator*=(long rhs);
  HPReal& operator/=(long rhs);
  HPReal operator-() const;

  friend HPReal operator+(HPReal a, const HPReal& b) { return a += b; }
  friend HPReal operator-(HPReal a, const HPReal& b) { return a -= b; }
  friend HPReal operator*(HPReal a, const HPReal& b) { return a *= b; }
  friend HPReal operator/(HPReal a, const HPReal& b) { return a /= b; }
  friend HPReal operator*(HPReal a, long b) { return a *= b; }
  friend HPReal operator/(HPReal a, long b) { return a /= b; }
  friend HPReal operator*(long a, HPReal b) { return b *= a; }

  friend bool operator==(const HPReal& a, const HPReal& b);
  friend std::partial_ordering operator<=>(const HPReal& a, const HPReal& b);

 private:
  void reset_precision(int digits);

  mpfr_t value_;
  int digits_;
};

HPReal abs(const HPReal& x);
HPReal sqrt(const HPReal& x);
HPReal cbrt(const HPReal& x);
HPReal exp(const HPReal& x);
HPReal log(const HPReal& x);
HPReal log_of(std::int64_t n, int digits);
HPReal pow(const HPReal& base, const HPReal& exponent);
HPReal pow(const HPReal& base, long exponent);
HPReal sin(const HPReal& x);
HPReal min(const HPReal& a, const HPReal& b);
HPReal max(const HPReal& a, const HPReal& b);
/// 10^(-k) at `digits`.
HPReal ten_to_minus(int k, int digits);

/// Number of leading decimal digits on which `a` and `b` agree, measured as
/// floor(-log10(|a-b| / |b|)); large when equal.
int agreeing_digits(const HPReal& a, const HPReal& b);

}  // namespace chebias
