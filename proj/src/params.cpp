#include "prc/params.hpp"

#include <cmath>
#include <stdexcept>

namespace prc {

size_t round_to_even_min2(double x) {
  double lo = 2.0 * std::floor(x / 2.0);
  double hi = lo + 2.0;
  double v = (x - lo < hi - x) ? lo : hi;
  if (v < 2.0) v = 2.0;
  return (size_t)v;
}

void SchemeParams::validate() {
  if (n < 2 || r < 1 || d < 1) throw std::invalid_argument("params: empty geometry");
  if (t < 2 || t % 2 != 0) throw std::invalid_argument("params: t must be even >= 2");
  if (2 * t * t > n) throw std::invalid_argument("params: t exceeds sqrt(n/2)");
  Rational half(1, 2);
  if (eta < Rational(0, 1) || !(eta < half)) throw std::invalid_argument("params: eta range");
  if (zeta < Rational(0, 1) || !(zeta < half)) throw std::invalid_argument("params: zeta range");
  if (delta < Rational(0, 1)) throw std::invalid_argument("params: delta range");
  if (!(eta + delta < half))
    throw std::invalid_argument("params: eta + delta must stay below 1/2");
  double tlogn = (double)t * std::log2((double)n);
  span_const_c = 0.5 - (double)d / tlogn;
  if (!(span_const_c > 0))
    throw std::invalid_argument("params: d too large for t log2 n");
  if (lambda == 0) throw std::invalid_argument("params: lambda");
}

SchemeParams derive_params_zero_bit(size_t n, size_t r, Rational delta) {
  if (!(delta > Rational(0, 1)) || !(delta < Rational(1, 2)))
    throw std::invalid_argument("derive: need 0 < delta < 1/2");
  if (r < 16) throw std::invalid_argument("derive: r too small");
  SchemeParams p;
  p.n = n;
  p.r = r;
  p.delta = delta;
  p.eta = Rational(1, 4) - delta / Rational(2, 1);
  double dd = delta.to_double();
  p.t = round_to_even_min2(std::log2(4.0 * std::pow((double)r, -0.25)) /
                           std::log2(0.5 - dd));
  p.d = (size_t)std::ceil((double)p.t * std::log2((double)n) / 3.0);
  p.zeta = snap_dyadic(std::pow((double)r, -0.25));
  p.validate();
  return p;
}

double single_bit_delta_prime(Rational delta) {
  return std::log2(1.0 / (0.25 + delta.to_double())) - 1.0;
}

SchemeParams derive_params_single_bit(size_t n, size_t r, Rational delta) {
  if (!(delta > Rational(0, 1)) || !(delta < Rational(1, 4)))
    throw std::invalid_argument("derive: need 0 < delta < 1/4");
  if (r < 16) throw std::invalid_argument("derive: r too small");
  SchemeParams p;
  p.n = n;
  p.r = r;
  p.delta = delta;
  p.eta = Rational(1, 8) - delta / Rational(2, 1);
  p.t = round_to_even_min2(std::log2((double)r) / 5.0);
  double logn = std::log2((double)n);
  double eps = std::min((double)p.t * single_bit_delta_prime(delta) / (4.0 * logn),
                        1.0 / 17.0);
  p.d = (size_t)std::ceil(eps * (double)p.t * logn);
  p.zeta = snap_dyadic(1.5 * std::pow((double)r, -0.2));
  p.validate();
  return p;
}

}  // namespace prc
