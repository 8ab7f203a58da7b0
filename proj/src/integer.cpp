#include "nfold/integer.hpp"

#include <cctype>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace nfold {

namespace {

mpz_class to_mpz_value(std::int64_t v) {
  mpz_class out;
  // mpz_set_si takes a long, which is 64 bits on the supported targets.
  static_assert(sizeof(long) == sizeof(std::int64_t));
  mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
  return out;
}

}  // namespace

Integer::Integer(const mpz_class& v) { set_big(v); }

void Integer::set_big(mpz_class value) {
  if (mpz_fits_slong_p(value.get_mpz_t())) {
    small_ = mpz_get_si(value.get_mpz_t());
    big_.reset();
    return;
  }
  small_ = 0;
  big_ = std::make_unique<mpz_class>(std::move(value));
}

void Integer::normalize() {
  if (big_ && mpz_fits_slong_p(big_->get_mpz_t())) {
    small_ = mpz_get_si(big_->get_mpz_t());
    big_.reset();
  }
}

mpz_class Integer::to_mpz() const { return big_ ? *big_ : to_mpz_value(small_); }

Integer& Integer::add_slow(const Integer& rhs) {
  set_big(to_mpz() + rhs.to_mpz());
  return *this;
}

Integer& Integer::sub_slow(const Integer& rhs) {
  set_big(to_mpz() - rhs.to_mpz());
  return *this;
}

Integer& Integer::mul_slow(const Integer& rhs) {
  set_big(to_mpz() * rhs.to_mpz());
  return *this;
}

Integer Integer::negate_slow() const {
  Integer out;
  out.set_big(-to_mpz());
  return out;
}

int Integer::compare_slow(const Integer& a, const Integer& b) noexcept {
  if (a.big_ && b.big_) return mpz_cmp(a.big_->get_mpz_t(), b.big_->get_mpz_t());
  if (a.big_) return mpz_cmp_si(a.big_->get_mpz_t(), static_cast<long>(b.small_));
  return -mpz_cmp_si(b.big_->get_mpz_t(), static_cast<long>(a.small_));
}

int Integer::compare_abs_slow(const Integer& a, const Integer& b) noexcept {
  const mpz_class ma = a.to_mpz();
  const mpz_class mb = b.to_mpz();
  return mpz_cmpabs(ma.get_mpz_t(), mb.get_mpz_t());
}

Integer Integer::from_string(std::string_view text) {
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  if (pos == text.size()) throw std::invalid_argument("not an integer literal: '" + std::string(text) + "'");
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("not an integer literal: '" + std::string(text) + "'");
    }
  }
  std::string digits(text);
  if (digits.front() == '+') digits.erase(0, 1);
  mpz_class value;
  if (value.set_str(digits, 10) != 0) {
    throw std::invalid_argument("not an integer literal: '" + std::string(text) + "'");
  }
  Integer out;
  out.set_big(std::move(value));
  return out;
}

std::string Integer::to_string() const { return big_ ? big_->get_str(10) : std::to_string(small_); }

std::int64_t Integer::to_int64() const {
  if (big_) throw std::overflow_error("integer " + to_string() + " does not fit in 64 bits");
  return small_;
}

double Integer::to_double() const { return big_ ? big_->get_d() : static_cast<double>(small_); }

Integer Integer::abs() const { return sign() < 0 ? -*this : *this; }

Integer Integer::pow(unsigned long exponent) const {
  mpz_class out;
  const mpz_class base = to_mpz();
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return Integer(out);
}

std::size_t Integer::hash() const noexcept {
  if (!big_) return std::hash<std::int64_t>{}(small_);
  return std::hash<std::string>{}(big_->get_str(16));
}

Integer trunc_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("integer division by zero");
  if (a.is_small() && b.is_small()) {
    const std::int64_t x = a.to_int64();
    const std::int64_t y = b.to_int64();
    if (!(x == INT64_MIN && y == -1)) return Integer(x / y);
  }
  mpz_class q;
  const mpz_class x = a.to_mpz();
  const mpz_class y = b.to_mpz();
  mpz_tdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return Integer(q);
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("integer division by zero");
  if (a.is_small() && b.is_small()) {
    const std::int64_t x = a.to_int64();
    const std::int64_t y = b.to_int64();
    if (!(x == INT64_MIN && y == -1)) {
      std::int64_t q = x / y;
      if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
      return Integer(q);
    }
  }
  mpz_class q;
  const mpz_class x = a.to_mpz();
  const mpz_class y = b.to_mpz();
  mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return Integer(q);
}

Integer ceil_div(const Integer& a, const Integer& b) { return -floor_div(-a, b); }

Integer trunc_mod(const Integer& a, const Integer& b) { return a - trunc_div(a, b) * b; }

Integer gcd(const Integer& a, const Integer& b) {
  mpz_class g;
  const mpz_class x = a.to_mpz();
  const mpz_class y = b.to_mpz();
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return Integer(g);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

}  // namespace nfold
