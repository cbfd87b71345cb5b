#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rb {

// Arbitrary-precision integer with an int64 fast path. Values that fit in
// int64 are stored inline; larger values live in an immutable shared mpz.
class Integer {
 public:
  Integer() = default;
  Integer(int v) : small_(v) {}
  Integer(long v) : small_(v) {}
  Integer(long long v) : small_(v) {}
  explicit Integer(const mpz_class& v);

  static Integer parse(std::string_view text);

  bool is_small() const { return big_ == nullptr; }
  bool fits_int64() const { return is_small(); }
  int64_t to_int64() const;  // throws std::overflow_error
  mpz_class to_mpz() const;
  double to_double() const;
  std::string str() const;

  int sign() const;
  bool is_zero() const { return is_small() && small_ == 0; }
  bool is_one() const { return is_small() && small_ == 1; }

  Integer operator-() const;
  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  // Exact division; throws std::domain_error when the remainder is nonzero.
  Integer divexact(const Integer& d) const;
  // Floor-free truncated remainder, sign of the dividend (like C++ %).
  Integer rem(const Integer& d) const;
  // Non-negative residue modulo a small positive modulus.
  uint64_t mod_u64(uint64_t p) const;

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

  friend Integer gcd(const Integer& a, const Integer& b);
  friend Integer abs(const Integer& a);

 private:
  static Integer from_mpz(mpz_class v);

  int64_t small_ = 0;
  std::shared_ptr<const mpz_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace rb
