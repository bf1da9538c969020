#pragma once

// Arithmetic in K = Q[x]/(f): elements, norms, the ring of integers (closed
// form for quadratic fields, certified Z[theta] otherwise), prime ideals via
// Kummer-Dedekind, valuations and fractional ideals.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "solhom/linalg.hpp"
#include "solhom/poly.hpp"

namespace solhom {

/// Element of K in power-basis coordinates of the field generator theta.
struct NfElement {
  RatVector coords;
  friend bool operator==(const NfElement& a, const NfElement& b) { return a.coords == b.coords; }
};

struct PrimeIdeal {
  Int p;
  unsigned e = 0;      ///< ramification index
  unsigned f_res = 0;  ///< residue degree
  QPoly g;             ///< P = (p, g(alpha)) with alpha the order generator
  NfElement pi;        ///< g(alpha) as an element
  IntMatrix basis;     ///< HNF basis of P in integral-basis coordinates
  IntVector beta;      ///< beta in O with beta * P in pO, beta not in pO
  std::string label;

  Int norm() const { return ipow(p, f_res); }
  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) { return a.p == b.p && a.basis == b.basis; }
  friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b);
};

class FractionalIdeal;

class NumberField {
 public:
  /// f must be monic with integer coefficients and irreducible over Q.
  /// `scale` records theta = scale * (root of the user's polynomial) and is
  /// used only for rendering.
  explicit NumberField(const QPoly& f, Rat scale = 1, std::string var = "x");

  /// K = Q, presented by f = x.
  static NumberField rationals();

  std::size_t degree() const noexcept { return n_; }
  const QPoly& min_poly() const noexcept { return f_; }
  const Rat& scale() const noexcept { return scale_; }
  /// Discriminant of the defining polynomial.
  const Int& poly_discriminant() const noexcept { return disc_f_; }
  /// Discriminant of the order used as O_K.
  Int order_discriminant() const;
  /// Columns are the integral basis in power-basis coordinates.
  const RatMatrix& integral_basis() const noexcept { return B_; }
  /// Squarefree D0 when the field is quadratic, Q(sqrt(D0)).
  std::optional<Int> quadratic_radicand() const { return d0_; }
  /// sqrt(D0) as an element, quadratic fields only.
  std::optional<NfElement> quadratic_root() const;
  /// Minimal polynomial of the order generator alpha (O = Z[alpha] when certified).
  const QPoly& order_generator_poly() const noexcept { return alpha_poly_; }
  const NfElement& order_generator() const noexcept { return alpha_; }

  // Elements.
  NfElement zero() const;
  NfElement one() const;
  NfElement from_rational(const Rat& r) const;
  /// Polynomial in theta.
  NfElement from_theta_poly(const QPoly& p) const;
  /// Polynomial in the user's variable (theta / scale).
  NfElement from_user_poly(const QPoly& p) const;
  /// Element with the given integral-basis coordinates.
  NfElement from_integral_coords(const RatVector& v) const;
  RatVector integral_coords(const NfElement& x) const;
  bool is_algebraic_integer(const NfElement& x) const;
  bool is_zero(const NfElement& x) const;

  NfElement add(const NfElement& a, const NfElement& b) const;
  NfElement sub(const NfElement& a, const NfElement& b) const;
  NfElement neg(const NfElement& a) const;
  NfElement mul(const NfElement& a, const NfElement& b) const;
  NfElement inv(const NfElement& a) const;
  NfElement pow(const NfElement& a, long n) const;

  /// Matrix of multiplication by x in the power basis (columns = x * theta^j).
  RatMatrix mult_matrix_power(const NfElement& x) const;
  /// Matrix of multiplication by x in integral-basis coordinates.
  RatMatrix mult_matrix(const NfElement& x) const;
  Rat norm(const NfElement& x) const;
  Rat trace(const NfElement& x) const;
  /// Characteristic polynomial of multiplication by x.
  QPoly char_poly(const NfElement& x) const;
  /// True when Q(x) = K.
  bool generates_field(const NfElement& x) const;

  std::string to_string(const NfElement& x) const;

  // Primes and ideals.
  /// Throws IndexObstruction when p divides [O_K : Z[alpha]] for an uncertified order.
  std::vector<std::pair<PrimeIdeal, unsigned>> factor_rational_prime(const Int& p) const;
  /// Throws ZeroInput for x = 0.
  long valuation(const NfElement& x, const PrimeIdeal& P) const;
  /// Primes p with p^2 | disc(f) at which Z[theta] fails to be p-maximal (degree > 2 only).
  const std::vector<Int>& index_obstructions() const noexcept { return obstructions_; }
  /// Prime ideals dividing the numerator or denominator of (x), with valuations.
  std::vector<std::pair<PrimeIdeal, long>> factor_element(const NfElement& x) const;

 private:
  void setup_order();
  NfElement reduce(const QPoly& p) const;
  QPoly as_theta_poly(const NfElement& x) const;
  PrimeIdeal make_prime(const Int& p, const QPoly& g, unsigned e) const;

  QPoly f_;
  std::size_t n_ = 0;
  Rat scale_ = 1;
  std::string var_;
  Int disc_f_;
  RatMatrix B_, B_inv_;
  QPoly alpha_poly_;
  NfElement alpha_;
  std::optional<Int> d0_;
  Int d0_scale_;  // sqrt(D0) = (2 theta + b) / d0_scale_
  std::vector<Int> obstructions_;
};

/// (1/den) * L(H), H an n x n HNF integer matrix in integral-basis coordinates.
class FractionalIdeal {
 public:
  FractionalIdeal() = default;
  /// Ideal generated (as a Z-module) by the given integral-basis coordinate vectors.
  /// The generating set must already be an O-module of full rank.
  static FractionalIdeal from_module_generators(const std::vector<RatVector>& gens);
  static FractionalIdeal unit(const NumberField& K);
  static FractionalIdeal principal(const NumberField& K, const NfElement& x);
  static FractionalIdeal from_prime(const PrimeIdeal& P);

  const Int& denominator() const noexcept { return den_; }
  const IntMatrix& hnf_basis() const noexcept { return H_; }
  /// Basis as rational columns in integral-basis coordinates.
  RatMatrix basis() const;
  std::size_t rank() const noexcept { return H_.cols(); }

  FractionalIdeal multiply(const NumberField& K, const FractionalIdeal& other) const;
  FractionalIdeal inverse(const NumberField& K) const;
  FractionalIdeal power(const NumberField& K, long k) const;

  bool contains(const RatVector& integral_coords) const;
  bool contains(const FractionalIdeal& other) const;
  bool is_integral() const;
  /// Absolute norm (index of the ideal in O, extended multiplicatively).
  Rat norm() const;

  friend bool operator==(const FractionalIdeal& a, const FractionalIdeal& b) { return a.den_ == b.den_ && a.H_ == b.H_; }
  std::string to_string() const;

 private:
  void canonicalize();
  Int den_ = 1;
  IntMatrix H_;
};

/// [I : J] for J contained in I; throws NotContained otherwise.
Int ideal_index(const FractionalIdeal& I, const FractionalIdeal& J);

/// Searches for a generator of I among lattice vectors with coefficients
/// bounded by `bound` in the HNF basis. Returns nullopt when none is found.
std::optional<NfElement> find_generator(const NumberField& K, const FractionalIdeal& I, unsigned bound);

/// Discriminant of a monic integer polynomial.
Int poly_discriminant(const QPoly& f);

/// Certified irreducibility over Q; throws Unsupported when undecided.
bool is_irreducible(const QPoly& f);

}  // namespace solhom
