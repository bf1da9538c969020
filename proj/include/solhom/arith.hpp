#pragma once

// Exact integer and rational scalars, plus the small number-theoretic
// helpers (primality, factorization, radicals) used across the library.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace solhom {

using Int = mpz_class;
using Rat = mpq_class;

/// Canonicalizing constructor for rationals; mpq_class does not reduce on its own.
inline Rat make_rat(const Int& num, const Int& den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int ipow(const Int& base, unsigned long exp);
Rat rpow(const Rat& base, long exp);

/// Floor division for integers (rounds toward negative infinity).
Int floor_div(const Int& a, const Int& b);

/// Probabilistic primality (GMP, 40 rounds); deterministic for |n| < 2^64 in practice.
bool is_prime(const Int& n);

/// Prime factorization of |n| (n != 0); trial division then Pollard-Brent.
std::map<Int, unsigned> factor(const Int& n);

/// Product of the distinct primes dividing |n|; rad(0) is undefined, rad(±1) = 1.
Int radical(const Int& n);

/// Number of prime factors of |n| counted with multiplicity.
unsigned big_omega(const Int& n);

/// Exponent of the prime p in n (n != 0).
unsigned valuation(const Int& n, const Int& p);
long valuation(const Rat& r, const Int& p);

/// Removes every prime factor of m from q.
Int strip_primes(Int q, const Int& m);

/// Parses "a", "-a", "a/b" (whitespace allowed around the slash).
Rat parse_rational(std::string_view text);

std::string to_string(const Int& n);
std::string to_string(const Rat& r);

}  // namespace solhom
