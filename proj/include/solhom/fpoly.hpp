#pragma once

// Polynomials over the prime field F_p (p < 2^63) and their factorization:
// squarefree decomposition, distinct-degree and Cantor-Zassenhaus splitting.

#include <cstdint>
#include <vector>

#include "solhom/arith.hpp"

namespace solhom {

/// Coefficients in [0, p) from x^0 upwards, no trailing zeros.
using FpPoly = std::vector<std::uint64_t>;

struct FpFactor {
  FpPoly poly;  ///< monic irreducible
  unsigned multiplicity = 0;
};

/// Reduces integer coefficients mod p.
FpPoly reduce_mod(const std::vector<Int>& coeffs, std::uint64_t p);

/// Monic irreducible factorization of f mod p, sorted by (degree, coefficients).
/// The leading coefficient of f must be a unit mod p.
std::vector<FpFactor> factor_mod_p(const std::vector<Int>& f, std::uint64_t p);

/// Degrees of the irreducible factors (with multiplicity), sorted.
std::vector<unsigned> factor_degrees_mod_p(const std::vector<Int>& f, std::uint64_t p);

// Elementary arithmetic, exposed for tests.
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_mod(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_gcd(const FpPoly& a, const FpPoly& b, std::uint64_t p);

}  // namespace solhom
