#pragma once

// Stationary inductive limits colim(L -> L -> ...) along one endomorphism T,
// realized as the union of T^{-n} L inside Q^r, plus an optional finite
// torsion system handled separately.

#include <map>
#include <optional>
#include <string>

#include "solhom/abelian.hpp"

namespace solhom {

struct TorsionSystem {
  FgAbGroup group;  ///< finite (free rank 0)
  IntMatrix endo;   ///< endomorphism on the torsion generators
};

class ColimitGroup {
 public:
  ColimitGroup() = default;
  /// `lattice` columns are a Z-basis of L (square, nonsingular); `endo` acts on
  /// Q^r and must be invertible with endo * L inside L.
  ColimitGroup(RatMatrix lattice, RatMatrix endo, std::optional<TorsionSystem> torsion = std::nullopt);
  /// colim(Z^r, A) for an integer matrix A.
  static ColimitGroup from_integer_endo(const IntMatrix& A, std::optional<TorsionSystem> torsion = std::nullopt);

  std::size_t ambient_rank() const noexcept { return lattice_.rows(); }
  const RatMatrix& lattice() const noexcept { return lattice_; }
  const RatMatrix& endo() const noexcept { return endo_; }
  /// Matrix of T in the lattice basis (integral).
  const IntMatrix& endo_in_basis() const noexcept { return endo_basis_; }
  const std::optional<TorsionSystem>& torsion() const noexcept { return torsion_; }

  /// Coordinates of x in the lattice basis.
  RatVector lattice_coords(const RatVector& x) const;

  /// Colimit of the torsion system (its eventual image), trivial when absent.
  FgAbGroup torsion_colimit() const;

 private:
  RatMatrix lattice_, lattice_inv_, endo_;
  IntMatrix endo_basis_;
  std::optional<TorsionSystem> torsion_;
};

struct MembershipResult {
  bool member = false;
  unsigned long witness = 0;  ///< n with T^n x in L when member
  unsigned long bound = 0;    ///< proven search bound r * Omega(D)
  bool cap_hit = false;       ///< search was truncated by the cap before the bound
};

/// Decides x in colim. The search is proven complete at n = r * Omega(D)
/// where D is the least positive integer with D x in L; it additionally
/// sweeps up to cap_multiplier * bound as a consistency check.
MembershipResult membership(const RatVector& x, const ColimitGroup& G, double cap_multiplier = 10.0);

struct InvariantSignature {
  std::size_t q_rank = 0;
  std::map<Int, std::size_t> mod_p_dims;  ///< dim over F_p of G (x) F_p, for the relevant primes
  FgAbGroup torsion_colimit;
  friend bool operator==(const InvariantSignature& a, const InvariantSignature& b) {
    return a.q_rank == b.q_rank && a.mod_p_dims == b.mod_p_dims && a.torsion_colimit == b.torsion_colimit;
  }
};

InvariantSignature signature(const ColimitGroup& G);
/// Signatures evaluated on the union of both groups' relevant primes.
bool signatures_agree(const ColimitGroup& a, const ColimitGroup& b);
std::size_t mod_p_dimension(const ColimitGroup& G, const Int& p);

/// Z[1/rad(m)] (plus torsion atoms) for rank-1 groups; throws OutOfRange otherwise.
LocalizedForm canonical_form_rank1(const ColimitGroup& G);

enum class NameProvenance { Rank1, DiagonalEndo, Unimodular, None };
std::string to_string(NameProvenance p);

struct CertifiedName {
  std::optional<LocalizedForm> form;
  NameProvenance provenance = NameProvenance::None;
};

/// A LocalizedForm only when a decision procedure certifies it.
CertifiedName certified_name(const ColimitGroup& G);

/// Exact equality of colimits inside the same ambient Q^r for commuting
/// endomorphisms; torsion parts are compared up to isomorphism. Throws
/// NonCommuting otherwise.
bool equal_commuting(const ColimitGroup& a, const ColimitGroup& b, double cap_multiplier = 10.0);

}  // namespace solhom
