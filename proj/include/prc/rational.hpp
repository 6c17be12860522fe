#pragma once
// Exact rational arithmetic on int64 with gcd normalization.
//
// Every quantity that participates in a decode threshold or an identity check
// (bias values, eta/zeta/delta, Krawtchouk sums) is kept exact.  The domains
// are small enough that reduced numerators and denominators fit comfortably in
// int64; intermediate products go through __int128 and overflow past that
// throws rather than wrapping.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace prc {

namespace detail {
inline long long checked_i64(__int128 v, const char* what) {
  if (v > (__int128)INT64_MAX || v < (__int128)INT64_MIN)
    throw std::overflow_error(std::string("rational overflow in ") + what);
  return (long long)v;
}
}  // namespace detail

struct Rational {
  long long num = 0;
  long long den = 1;  // always > 0, gcd(|num|, den) == 1

  Rational() = default;
  Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    num = n; den = d;
  }
  static Rational of_int(long long n) { return Rational(n, 1); }

  // Parses a plain decimal string ("0.1", "-3", ".25") into an exact value.
  static Rational from_decimal(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("rational: empty decimal");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') { neg = s[0] == '-'; i = 1; }
    __int128 n = 0, d = 1;
    bool frac = false, any = false;
    for (; i < s.size(); ++i) {
      char c = s[i];
      if (c == '.') {
        if (frac) throw std::invalid_argument("rational: bad decimal");
        frac = true;
        continue;
      }
      if (c < '0' || c > '9') throw std::invalid_argument("rational: bad decimal");
      n = n * 10 + (c - '0');
      if (frac) d *= 10;
      any = true;
      if (n > (__int128)INT64_MAX / 16 || d > (__int128)INT64_MAX / 16)
        throw std::overflow_error("rational: decimal too long");
    }
    if (!any) throw std::invalid_argument("rational: bad decimal");
    return Rational(neg ? -(long long)n : (long long)n, (long long)d);
  }

  double to_double() const { return (double)num / (double)den; }
  bool is_zero() const { return num == 0; }

  Rational operator+(const Rational& o) const {
    __int128 n = (__int128)num * o.den + (__int128)o.num * den;
    __int128 d = (__int128)den * o.den;
    return reduced(n, d, "+");
  }
  Rational operator-(const Rational& o) const {
    __int128 n = (__int128)num * o.den - (__int128)o.num * den;
    __int128 d = (__int128)den * o.den;
    return reduced(n, d, "-");
  }
  Rational operator*(const Rational& o) const {
    return reduced((__int128)num * o.num, (__int128)den * o.den, "*");
  }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw std::invalid_argument("rational: divide by zero");
    return reduced((__int128)num * o.den, (__int128)den * o.num, "/");
  }
  Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

  Rational abs() const { Rational r = *this; if (r.num < 0) r.num = -r.num; return r; }

  Rational pow_u(unsigned e) const {
    Rational acc = of_int(1), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = e > 1 ? base * base : base;
      e >>= 1;
    }
    return acc;
  }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return (__int128)num * o.den < (__int128)o.num * den;
  }
  bool operator<=(const Rational& o) const {
    return (__int128)num * o.den <= (__int128)o.num * den;
  }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  static Rational reduced(__int128 n, __int128 d, const char* what) {
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    Rational r;
    r.num = detail::checked_i64(n, what);
    r.den = detail::checked_i64(d, what);
    return r;
  }
};

// Nearest rational with denominator 2^24.  Used to pin irrational parameter
// formulas (r^{-1/4} and friends) to values that serialize exactly and make
// threshold comparisons integer-exact.
inline Rational snap_dyadic(double x) {
  const long long den = 1ll << 24;
  double scaled = x * (double)den;
  long long n = (long long)(scaled >= 0 ? scaled + 0.5 : scaled - 0.5);
  return Rational(n, den);
}

}  // namespace prc
