#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nfold {

/// Exact integer of unbounded magnitude.
///
/// Values that fit in 64 bits are stored inline; anything larger is held in a
/// GMP integer. Every operation checks for overflow and promotes, so results
/// are exact regardless of magnitude. Values are demoted back to the inline
/// form whenever they fit again, which keeps equality and hashing canonical.
class Integer {
 public:
  Integer() noexcept = default;

  template <std::signed_integral T>
  Integer(T v) noexcept : small_(static_cast<std::int64_t>(v)) {}  // NOLINT

  template <std::unsigned_integral T>
  Integer(T v) {  // NOLINT
    if (static_cast<std::uint64_t>(v) <= static_cast<std::uint64_t>(INT64_MAX)) {
      small_ = static_cast<std::int64_t>(v);
    } else {
      big_ = std::make_unique<mpz_class>();
      mpz_import(big_->get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &v);
    }
  }

  explicit Integer(const mpz_class& v);

  Integer(const Integer& other) : small_(other.small_) {
    if (other.big_) big_ = std::make_unique<mpz_class>(*other.big_);
  }
  Integer(Integer&& other) noexcept = default;
  Integer& operator=(const Integer& other) {
    if (this == &other) return *this;
    small_ = other.small_;
    if (other.big_) {
      big_ = std::make_unique<mpz_class>(*other.big_);
    } else {
      big_.reset();
    }
    return *this;
  }
  Integer& operator=(Integer&& other) noexcept = default;
  ~Integer() = default;

  /// Parses an optionally signed decimal literal. Throws std::invalid_argument.
  static Integer from_string(std::string_view text);
  std::string to_string() const;

  int sign() const noexcept {
    if (!big_) return (small_ > 0) - (small_ < 0);
    return mpz_sgn(big_->get_mpz_t());
  }
  bool is_zero() const noexcept { return !big_ && small_ == 0; }
  bool is_small() const noexcept { return !big_; }
  bool fits_int64() const noexcept { return !big_; }
  /// Throws std::overflow_error when the value does not fit.
  std::int64_t to_int64() const;
  mpz_class to_mpz() const;
  double to_double() const;

  Integer abs() const;
  Integer pow(unsigned long exponent) const;

  Integer& operator+=(const Integer& rhs) {
    std::int64_t out;
    if (!big_ && !rhs.big_ && !__builtin_add_overflow(small_, rhs.small_, &out)) {
      small_ = out;
      return *this;
    }
    return add_slow(rhs);
  }
  Integer& operator-=(const Integer& rhs) {
    std::int64_t out;
    if (!big_ && !rhs.big_ && !__builtin_sub_overflow(small_, rhs.small_, &out)) {
      small_ = out;
      return *this;
    }
    return sub_slow(rhs);
  }
  Integer& operator*=(const Integer& rhs) {
    std::int64_t out;
    if (!big_ && !rhs.big_ && !__builtin_mul_overflow(small_, rhs.small_, &out)) {
      small_ = out;
      return *this;
    }
    return mul_slow(rhs);
  }
  Integer operator-() const {
    if (!big_ && small_ != INT64_MIN) return Integer(-small_);
    return negate_slow();
  }

  friend Integer operator+(Integer lhs, const Integer& rhs) { return lhs += rhs; }
  friend Integer operator-(Integer lhs, const Integer& rhs) { return lhs -= rhs; }
  friend Integer operator*(Integer lhs, const Integer& rhs) { return lhs *= rhs; }

  friend bool operator==(const Integer& a, const Integer& b) noexcept {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    return compare_slow(a, b) == 0;
  }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
    if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
    return compare_slow(a, b) <=> 0;
  }

  /// Three-way comparison of |a| and |b|.
  friend int compare_abs(const Integer& a, const Integer& b) noexcept {
    if (!a.big_ && !b.big_) {
      const auto ma = magnitude(a.small_);
      const auto mb = magnitude(b.small_);
      return (ma > mb) - (ma < mb);
    }
    return compare_abs_slow(a, b);
  }

  std::size_t hash() const noexcept;

 private:
  static std::uint64_t magnitude(std::int64_t v) noexcept {
    return v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
  }
  static int compare_abs_slow(const Integer& a, const Integer& b) noexcept;
  static int compare_slow(const Integer& a, const Integer& b) noexcept;
  Integer& add_slow(const Integer& rhs);
  Integer& sub_slow(const Integer& rhs);
  Integer& mul_slow(const Integer& rhs);
  Integer negate_slow() const;
  void set_big(mpz_class value);
  void normalize();

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;  // engaged iff the value does not fit in int64
};

/// Quotient rounded toward zero. Throws std::domain_error on division by zero.
Integer trunc_div(const Integer& a, const Integer& b);
/// Quotient rounded toward negative infinity.
Integer floor_div(const Integer& a, const Integer& b);
/// Quotient rounded toward positive infinity.
Integer ceil_div(const Integer& a, const Integer& b);
/// Remainder matching trunc_div: a == trunc_div(a,b)*b + trunc_mod(a,b).
Integer trunc_mod(const Integer& a, const Integer& b);
/// Nonnegative greatest common divisor; gcd(0,0) == 0.
Integer gcd(const Integer& a, const Integer& b);


std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace nfold

template <>
struct std::hash<nfold::Integer> {
  std::size_t operator()(const nfold::Integer& v) const noexcept { return v.hash(); }
};
