#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lcf {

// All flow values, weights and statistics are exact rationals.
using Rat = mpq_class;
using Int = mpz_class;

// mpq_class(num, den) does not canonicalize; route every non-literal
// numerator/denominator pair through here.
inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num);
  r /= Rat(den);
  return r;
}
inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

inline Int rat_floor(const Rat& q) {
  Int z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

inline Int rat_ceil(const Rat& q) {
  Int z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::invalid_argument("rat_pow: 0 to negative power");
    return rat_pow(1 / base, -e);
  }
  Rat num(int_pow(Int(base.get_num()), static_cast<unsigned long>(e)));
  Rat den(int_pow(Int(base.get_den()), static_cast<unsigned long>(e)));
  Rat r = num / den;
  r.canonicalize();
  return r;
}

// Smallest power of two >= q; q must be positive.
inline Int pow2_at_least(const Rat& q) {
  if (q <= 0) throw std::invalid_argument("pow2_at_least: nonpositive argument");
  Int p = 1;
  while (p < q) p *= 2;
  return p;
}

// Parses "p", "p/q" with optional sign. Throws std::invalid_argument on junk.
Rat parse_rat(const std::string& s);

// Canonical string: "p" for integers, "p/q" otherwise.
std::string rat_str(const Rat& q);

inline long ilog2_ceil(const Int& v) {
  // smallest L with 2^L >= v, v >= 1
  if (v <= 1) return 0;
  Int p = 1;
  long l = 0;
  while (p < v) {
    p *= 2;
    ++l;
  }
  return l;
}

}  // namespace lcf
