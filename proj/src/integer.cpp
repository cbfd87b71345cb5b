#include "rb/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace rb {

namespace {

static_assert(sizeof(long) == sizeof(int64_t), "LP64 platform expected");

bool mpz_fits_int64(const mpz_class& v) { return v.fits_slong_p(); }
mpz_class mpz_from_int64(int64_t v) { return mpz_class(static_cast<long>(v)); }
int64_t mpz_to_int64(const mpz_class& v) { return v.get_si(); }

}  // namespace

Integer::Integer(const mpz_class& v) {
  if (mpz_fits_int64(v)) {
    small_ = mpz_to_int64(v);
  } else {
    big_ = std::make_shared<const mpz_class>(v);
  }
}

Integer Integer::from_mpz(mpz_class v) { return Integer(v); }

Integer Integer::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  mpz_class v;
  if (v.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
    throw std::invalid_argument("bad integer literal: " + s);
  return Integer(v);
}

int64_t Integer::to_int64() const {
  if (!is_small()) throw std::overflow_error("Integer does not fit in int64");
  return small_;
}

mpz_class Integer::to_mpz() const {
  return is_small() ? mpz_from_int64(small_) : *big_;
}

double Integer::to_double() const {
  return is_small() ? static_cast<double>(small_) : big_->get_d();
}

std::string Integer::str() const {
  return is_small() ? std::to_string(small_) : big_->get_str();
}

int Integer::sign() const {
  if (is_small()) return (small_ > 0) - (small_ < 0);
  return sgn(*big_);
}

Integer Integer::operator-() const {
  if (is_small() && small_ != std::numeric_limits<int64_t>::min())
    return Integer(-small_);
  return from_mpz(-to_mpz());
}

Integer& Integer::operator+=(const Integer& o) {
  int64_t r;
  if (is_small() && o.is_small() && !__builtin_add_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  *this = from_mpz(to_mpz() + o.to_mpz());
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  int64_t r;
  if (is_small() && o.is_small() && !__builtin_sub_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  *this = from_mpz(to_mpz() - o.to_mpz());
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  int64_t r;
  if (is_small() && o.is_small() && !__builtin_mul_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  *this = from_mpz(to_mpz() * o.to_mpz());
  return *this;
}

Integer Integer::divexact(const Integer& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero");
  if (is_small() && d.is_small() && !(small_ == std::numeric_limits<int64_t>::min() && d.small_ == -1)) {
    if (small_ % d.small_ != 0) throw std::domain_error("inexact division");
    return Integer(small_ / d.small_);
  }
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), to_mpz().get_mpz_t(), d.to_mpz().get_mpz_t());
  if (r != 0) throw std::domain_error("inexact division");
  return from_mpz(q);
}

Integer Integer::rem(const Integer& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero");
  if (is_small() && d.is_small()) {
    if (d.small_ == -1) return Integer(0);
    return Integer(small_ % d.small_);
  }
  mpz_class r;
  mpz_tdiv_r(r.get_mpz_t(), to_mpz().get_mpz_t(), d.to_mpz().get_mpz_t());
  return from_mpz(r);
}

uint64_t Integer::mod_u64(uint64_t p) const {
  if (is_small()) {
    int64_t r = small_ % static_cast<int64_t>(p);
    return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(p) : r);
  }
  return mpz_fdiv_ui(big_->get_mpz_t(), p);
}

bool operator==(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) return a.small_ == b.small_;
  if (a.is_small() != b.is_small()) return false;  // normalized representation
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) return a.small_ <=> b.small_;
  int c = cmp(a.to_mpz(), b.to_mpz());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small() && a.small_ != std::numeric_limits<int64_t>::min() &&
      b.small_ != std::numeric_limits<int64_t>::min()) {
    int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
    int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
    while (y != 0) {
      int64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(x);
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(g);
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }

}  // namespace rb
