#include "solhom/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace solhom {

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

IntMatrix to_int(const RatMatrix& m, const char* context) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw FlatteningFailure(std::string(context) + " is not integral");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

bool is_integral(const RatMatrix& m) {
  for (const auto& x : m.entries())
    if (x.get_den() != 1) return false;
  return true;
}

bool is_integral(const RatVector& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

std::pair<Int, IntMatrix> clear_denominators(const RatMatrix& m) {
  Int den = 1;
  for (const auto& x : m.entries()) den = lcm(den, x.get_den());
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_num() * (den / m(i, j).get_den());
  return {den, r};
}

namespace {

template <typename T>
std::string render(const Matrix<T>& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << to_string(m(i, j));
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row_dst += q * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += q * m(i, src);
}

Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::string to_string(const IntMatrix& m) { return render(m); }
std::string to_string(const RatMatrix& m) { return render(m); }
std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << render(m); }
std::ostream& operator<<(std::ostream& os, const RatMatrix& m) { return os << render(m); }

SmithForm snf(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SmithForm f{A, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& S = f.S;
  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (S(i, j) == 0) continue;
          if (pi == m || abs(S(i, j)) < abs(S(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) return f;  // remaining block is zero
      swap_rows(S, t, pi);
      swap_rows(f.U, t, pi);
      swap_cols(S, t, pj);
      swap_cols(f.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Int q = -tdiv(S(i, t), S(t, t));
        add_row(S, i, t, q);
        add_row(f.U, i, t, q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Int q = -tdiv(S(t, j), S(t, t));
        add_col(S, j, t, q);
        add_col(f.V, j, t, q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold a row with a non-multiple into row t and retry.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            add_row(S, t, i, Int(1));
            add_row(f.U, t, i, Int(1));
            divisible = false;
            break;
          }
        }
      if (divisible) break;
    }
    if (S(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) S(t, j) = -S(t, j);
      for (std::size_t j = 0; j < m; ++j) f.U(t, j) = -f.U(t, j);
    }
  }
  return f;
}

IntVector invariant_factors(const IntMatrix& A) {
  const auto f = snf(A);
  IntVector d(std::min(A.rows(), A.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = f.S(i, i);
  return d;
}

HermiteForm hnf(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  HermiteForm f{A, IntMatrix::identity(n), 0};
  IntMatrix& H = f.H;
  std::size_t pc = 0;
  for (std::size_t i = 0; i < m && pc < n; ++i) {
    for (std::size_t j = pc + 1; j < n; ++j) {
      if (H(i, j) == 0) continue;
      const Int a = H(i, pc), b = H(i, j);
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const Int ag = a / g, bg = b / g;
      // [col_pc, col_j] <- [s*col_pc + t*col_j, -bg*col_pc + ag*col_j]; determinant 1.
      for (IntMatrix* M : {&H, &f.U}) {
        for (std::size_t r = 0; r < M->rows(); ++r) {
          const Int x = (*M)(r, pc), y = (*M)(r, j);
          (*M)(r, pc) = s * x + t * y;
          (*M)(r, j) = -bg * x + ag * y;
        }
      }
    }
    if (H(i, pc) == 0) continue;
    if (H(i, pc) < 0) {
      for (std::size_t r = 0; r < m; ++r) H(r, pc) = -H(r, pc);
      for (std::size_t r = 0; r < n; ++r) f.U(r, pc) = -f.U(r, pc);
    }
    for (std::size_t j = 0; j < pc; ++j) {
      Int q = floor_div(H(i, j), H(i, pc));
      if (q != 0) {
        add_col(H, j, pc, Int(-q));
        add_col(f.U, j, pc, Int(-q));
      }
    }
    ++pc;
  }
  f.rank = pc;
  return f;
}

IntMatrix integer_kernel(const IntMatrix& A) {
  const auto f = hnf(A);
  const std::size_t n = A.cols();
  IntMatrix K(n, n - f.rank);
  for (std::size_t j = f.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) K(i, j - f.rank) = f.U(i, j);
  return K;
}

IntMatrix column_lattice(const IntMatrix& A) {
  const auto f = hnf(A);
  IntMatrix B(A.rows(), f.rank);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < f.rank; ++j) B(i, j) = f.H(i, j);
  return B;
}

Rat det(const RatMatrix& A) {
  if (!A.square()) throw DimensionMismatch("determinant of non-square matrix");
  RatMatrix M = A;
  const std::size_t n = M.rows();
  Rat d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(M(p, j), M(c, j));
      d = -d;
    }
    d *= M(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (M(i, c) == 0) continue;
      Rat q = M(i, c) / M(c, c);
      for (std::size_t j = c; j < n; ++j) M(i, j) -= q * M(c, j);
    }
  }
  return d;
}

Int det(const IntMatrix& A) {
  if (!A.square()) throw DimensionMismatch("determinant of non-square matrix");
  // Bareiss fraction-free elimination.
  IntMatrix M = A;
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(M, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        M(i, j) = t;
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

std::size_t rank(const RatMatrix& A) {
  RatMatrix M = A;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t p = r;
    while (p < M.rows() && M(p, c) == 0) ++p;
    if (p == M.rows()) continue;
    for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(p, j), M(r, j));
    for (std::size_t i = r + 1; i < M.rows(); ++i) {
      if (M(i, c) == 0) continue;
      Rat q = M(i, c) / M(r, c);
      for (std::size_t j = c; j < M.cols(); ++j) M(i, j) -= q * M(r, j);
    }
    ++r;
  }
  return r;
}

RatMatrix inverse(const RatMatrix& A) {
  if (!A.square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = A.rows();
  RatMatrix M = A, I = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M(p, c) == 0) ++p;
    if (p == n) throw OutOfRange("matrix is singular");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(M(p, j), M(c, j));
        std::swap(I(p, j), I(c, j));
      }
    const Rat piv = M(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      M(c, j) /= piv;
      I(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || M(i, c) == 0) continue;
      const Rat q = M(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        M(i, j) -= q * M(c, j);
        I(i, j) -= q * I(c, j);
      }
    }
  }
  return I;
}

RatVector solve(const RatMatrix& A, const RatVector& b) { return inverse(A).apply(b); }

Rat trace(const RatMatrix& A) {
  if (!A.square()) throw DimensionMismatch("trace of non-square matrix");
  Rat t = 0;
  for (std::size_t i = 0; i < A.rows(); ++i) t += A(i, i);
  return t;
}

RatMatrix power(const RatMatrix& A, unsigned long n) {
  RatMatrix result = RatMatrix::identity(A.rows()), base = A;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

RatMatrix exterior_power_matrix(const RatMatrix& A, std::size_t k) {
  if (!A.square()) throw DimensionMismatch("exterior power of non-square matrix");
  if (k > A.rows()) throw OutOfRange("exterior power degree exceeds matrix size");
  const auto subsets = k_subsets(A.rows(), k);
  RatMatrix E(subsets.size(), subsets.size());
  for (std::size_t I = 0; I < subsets.size(); ++I)
    for (std::size_t J = 0; J < subsets.size(); ++J) E(I, J) = det(A.submatrix(subsets[I], subsets[J]));
  return E;
}

RatVector char_poly(const RatMatrix& A) {
  if (!A.square()) throw DimensionMismatch("characteristic polynomial of non-square matrix");
  // Faddeev-LeVerrier.
  const std::size_t n = A.rows();
  RatVector c(n + 1);
  c[n] = 1;
  RatMatrix M(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    M = A * M;
    for (std::size_t i = 0; i < n; ++i) M(i, i) += c[n - k + 1];
    c[n - k] = -trace(A * M) / Rat(static_cast<unsigned long>(k));
  }
  return c;
}

RatVector power_sums(const RatVector& coeffs, std::size_t count) {
  const std::size_t m = coeffs.size() - 1;
  // e_i = (-1)^i a_{m-i}
  auto e = [&](std::size_t i) -> Rat {
    if (i > m) return 0;
    Rat v = coeffs[m - i];
    return (i % 2) ? Rat(-v) : v;
  };
  RatVector p(count + 1);
  for (std::size_t k = 1; k <= count; ++k) {
    Rat s = 0;
    for (std::size_t i = 1; i < k; ++i) {
      Rat term = e(i) * p[k - i];
      s += (i % 2) ? term : Rat(-term);
    }
    Rat last = Rat(static_cast<unsigned long>(k)) * e(k);
    s += (k % 2) ? last : Rat(-last);
    p[k] = s;
  }
  return RatVector(p.begin() + 1, p.end());
}

namespace {

IntMatrix reduce_mod(const IntMatrix& A, const Int& p) {
  IntMatrix R(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) {
      mpz_fdiv_r(R(i, j).get_mpz_t(), A(i, j).get_mpz_t(), p.get_mpz_t());
    }
  return R;
}

IntMatrix mul_mod(const IntMatrix& a, const IntMatrix& b, const Int& p) { return reduce_mod(a * b, p); }

// Row echelon form mod p in place; returns pivot columns.
std::vector<std::size_t> echelon_mod_p(IntMatrix& M, const Int& p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t q = r;
    while (q < M.rows() && M(q, c) == 0) ++q;
    if (q == M.rows()) continue;
    swap_rows(M, q, r);
    Int inv;
    mpz_invert(inv.get_mpz_t(), M(r, c).get_mpz_t(), p.get_mpz_t());
    for (std::size_t j = 0; j < M.cols(); ++j) {
      M(r, j) *= inv;
      mpz_fdiv_r(M(r, j).get_mpz_t(), M(r, j).get_mpz_t(), p.get_mpz_t());
    }
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || M(i, c) == 0) continue;
      const Int f = M(i, c);
      for (std::size_t j = 0; j < M.cols(); ++j) {
        M(i, j) -= f * M(r, j);
        mpz_fdiv_r(M(i, j).get_mpz_t(), M(i, j).get_mpz_t(), p.get_mpz_t());
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

void require_prime(const Int& p) {
  if (!is_prime(p)) throw NotPrime(to_string(p) + " is not prime");
}

}  // namespace

std::size_t rank_mod_p(const IntMatrix& A, const Int& p) {
  require_prime(p);
  IntMatrix M = reduce_mod(A, p);
  return echelon_mod_p(M, p).size();
}

std::size_t stable_rank_mod_p(const IntMatrix& A, const Int& p) {
  if (!A.square()) throw DimensionMismatch("stable rank of non-square matrix");
  require_prime(p);
  IntMatrix P = IntMatrix::identity(A.rows()), base = reduce_mod(A, p);
  for (std::size_t e = A.rows(); e; e >>= 1) {
    if (e & 1) P = mul_mod(P, base, p);
    if (e > 1) base = mul_mod(base, base, p);
  }
  return echelon_mod_p(P, p).size();
}

std::vector<IntVector> kernel_mod_p(const IntMatrix& A, const Int& p) {
  require_prime(p);
  IntMatrix M = reduce_mod(A, p);
  const auto pivots = echelon_mod_p(M, p);
  std::vector<IntVector> basis;
  std::vector<bool> is_pivot(A.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < A.cols(); ++free) {
    if (is_pivot[free]) continue;
    IntVector v(A.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Int x = -M(r, free);
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
      v[pivots[r]] = x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace solhom
