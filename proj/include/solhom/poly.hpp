#pragma once

// Univariate polynomials over Q, the expression parser used for user input,
// and exact real/complex root location (Sturm chains, Cauchy indices).

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solhom/arith.hpp"

namespace solhom {

class QPoly {
 public:
  QPoly() = default;
  /// Coefficients from x^0 upwards; trailing zeros are dropped.
  explicit QPoly(std::vector<Rat> coeffs);
  static QPoly constant(const Rat& c) { return QPoly({c}); }
  static QPoly x() { return QPoly({Rat(0), Rat(1)}); }
  static QPoly from_ints(const std::vector<Int>& coeffs);

  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Rat>& coeffs() const noexcept { return c_; }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

  Rat operator()(const Rat& x) const;
  QPoly derivative() const;
  QPoly monic() const;
  /// x -> s * x
  QPoly scale_variable(const Rat& s) const;
  QPoly compose(const QPoly& inner) const;
  bool is_integral() const;
  /// Integer coefficients; throws if any coefficient is non-integral.
  std::vector<Int> int_coeffs() const;

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rat& s, const QPoly& a);

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly operator/(const QPoly& a, const QPoly& b);
/// Monic gcd (zero if both are zero).
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly pow(const QPoly& a, unsigned n);
/// f / gcd(f, f'), made monic.
QPoly squarefree_part(const QPoly& f);

/// Parses expressions in one variable built from rationals, the variable,
/// + - * ^ (non-negative integer exponents), parentheses, and division by
/// constants. Implicit multiplication ("3x", "2(x+1)") is accepted.
QPoly parse_polynomial(std::string_view text, char var = 'x');

/// Number of distinct real roots of f in the open interval (a, b).
std::size_t real_roots_in_interval(const QPoly& f, const Rat& a, const Rat& b);
/// Number of distinct real roots of f.
std::size_t real_root_count(const QPoly& f);

struct RootInterval {
  Rat lo, hi;  ///< the root lies in (lo, hi), or equals lo when exact
  bool exact = false;
};

/// Disjoint isolating intervals for the distinct real roots, in increasing
/// order, each of width at most `width`.
std::vector<RootInterval> isolate_real_roots(const QPoly& f, const Rat& width);

/// Cauchy index of p/q over the whole real line.
long cauchy_index(const QPoly& p, const QPoly& q);

struct UnitDiskCount {
  std::size_t inside = 0;   ///< distinct roots with |z| < 1
  std::size_t outside = 0;  ///< distinct roots with |z| > 1
};

/// True when some complex root of f has absolute value exactly 1.
bool has_root_on_unit_circle(const QPoly& f);

/// Counts distinct roots inside/outside the unit disk. Throws BoundaryRoot
/// when a root lies on the unit circle.
UnitDiskCount roots_in_unit_disk(const QPoly& f);

}  // namespace solhom
