#pragma once

// Exact matrix algebra: normal forms, determinants, kernels, compound
// (exterior power) matrices and characteristic polynomials.

#include <cstddef>
#include <vector>

#include "solhom/matrix.hpp"

namespace solhom {

struct SmithForm {
  IntMatrix S;  ///< diagonal, d1 | d2 | ..., non-negative
  IntMatrix U;  ///< unimodular, rows x rows
  IntMatrix V;  ///< unimodular, cols x cols
};

/// S = U * A * V. Pivots are always the minimal-absolute-value nonzero entry
/// of the active block, ties broken by lowest (row, col).
SmithForm snf(const IntMatrix& A);

/// Diagonal of the Smith form (length min(rows, cols)).
IntVector invariant_factors(const IntMatrix& A);

struct HermiteForm {
  IntMatrix H;  ///< column Hermite normal form
  IntMatrix U;  ///< unimodular, cols x cols, with H = A * U
  std::size_t rank = 0;
};

/// Column-style HNF: lower-triangular staircase with positive pivots, entries
/// left of a pivot reduced into [0, pivot), zero columns trailing.
HermiteForm hnf(const IntMatrix& A);

/// Z-basis of the integer kernel {x : A x = 0} as columns.
IntMatrix integer_kernel(const IntMatrix& A);

/// Basis (as columns, in HNF) of the lattice spanned by the columns of A.
IntMatrix column_lattice(const IntMatrix& A);

Rat det(const RatMatrix& A);
Int det(const IntMatrix& A);
std::size_t rank(const RatMatrix& A);
/// Throws OutOfRange when singular.
RatMatrix inverse(const RatMatrix& A);
/// Solves A x = b for square nonsingular A.
RatVector solve(const RatMatrix& A, const RatVector& b);
Rat trace(const RatMatrix& A);
RatMatrix power(const RatMatrix& A, unsigned long n);

/// Lexicographically ordered k-subsets of {0, ..., n-1}.
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

/// Matrix of the k-th exterior power: entry (I, J) is the minor with rows I, columns J.
RatMatrix exterior_power_matrix(const RatMatrix& A, std::size_t k);

/// Monic characteristic polynomial det(x I - A), coefficients from x^0 upwards.
RatVector char_poly(const RatMatrix& A);

/// Power sums p_1..p_count of the roots of a monic polynomial (Newton identities).
RatVector power_sums(const RatVector& monic_coeffs, std::size_t count);

/// Rank over F_p of A^r mod p, where r is the size of A.
std::size_t stable_rank_mod_p(const IntMatrix& A, const Int& p);

/// Rank over F_p of A mod p.
std::size_t rank_mod_p(const IntMatrix& A, const Int& p);

/// Basis of {x in F_p^n : A x = 0 mod p}, entries in [0, p).
std::vector<IntVector> kernel_mod_p(const IntMatrix& A, const Int& p);

}  // namespace solhom
