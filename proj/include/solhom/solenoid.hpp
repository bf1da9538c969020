#pragma once

// The solenoid system of an algebraic number c: places of K = Q(c) where c
// is not a unit, archimedean contraction data, the Gamma tower of fractional
// ideals, the transfer index N and periodic-point counts.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "solhom/number_field.hpp"

namespace solhom {

struct Place {
  enum class Kind { Finite, Real, Complex };
  Kind kind = Kind::Finite;
  bool contracting = false;          ///< |c|_v < 1
  std::optional<PrimeIdeal> prime;   ///< finite places only
  long v_c = 0;                      ///< v_P(c), finite places only
  unsigned dim_R = 0;                ///< 1 real, 2 complex, 0 finite
};

std::string to_string(Place::Kind k);

struct SolenoidSystem {
  std::shared_ptr<const NumberField> K;
  NfElement c;
  std::vector<Place> places;  ///< finite places first (sorted), then real, then complex
  std::vector<std::pair<PrimeIdeal, long>> stable_finite;    ///< v_P(c) > 0
  std::vector<std::pair<PrimeIdeal, long>> unstable_finite;  ///< v_P(c) < 0
  std::size_t d = 0;  ///< sum of dim_R over contracting archimedean places
  Int N = 1;          ///< [Gamma_0 : Gamma_1]
  unsigned h = 1;     ///< principalization exponent of the unstable ideal product
  NfElement g;        ///< generator of prod_{unstable} P^{-h v_P(c)}
  int epsilon = 1;    ///< (-1)^(number of negative conjugates at real contracting places)

  const NumberField& field() const { return *K; }
  bool ring_is_integers() const { return stable_finite.empty() && unstable_finite.empty(); }
};

/// Largest h tried when principalizing the unstable ideal product.
inline constexpr unsigned kMaxPrincipalizationExponent = 12;

SolenoidSystem build_system(const Rat& c);
/// c given in K. Throws ZeroInput, BoundaryRoot (a conjugate of modulus 1),
/// Unsupported (c does not generate K, or no principal power within the bound).
SolenoidSystem build_system(std::shared_ptr<const NumberField> K, const NfElement& c);
/// min_poly over Q in `var` (any leading coefficient); element is a polynomial
/// in the same variable, defaulting to the root itself.
SolenoidSystem build_system(const QPoly& min_poly, const std::optional<QPoly>& element, const std::string& var = "x");

/// The opposite side: the same field with c replaced by c^{-1}.
SolenoidSystem inverse_system(const SolenoidSystem& sys);

/// The smallest positive integer D with D^n m(x / D) monic integral, m made monic first.
Int integrality_scale(const QPoly& monic_min_poly);

/// prod_{stable} P^{n v_P(c)} * prod_{unstable} P^{k v_P(c)}; k >= 0.
FractionalIdeal gamma_lattice(const SolenoidSystem& sys, long n, long k);

/// [Gamma_0^k : Gamma_1^k], computed from lattices.
Int transfer_index(const SolenoidSystem& sys, long k = 0);

/// |Fix(phi^n)| = prod over P with v_P(c^n - 1) > 0 of N(P)^{v_P(c^n - 1)}.
/// Throws DegenerateFix when c^n = 1.
Int periodic_points(const SolenoidSystem& sys, unsigned long n);

}  // namespace solhom
