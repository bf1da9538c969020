#pragma once

// Finitely generated abelian groups, homomorphisms between them, and the
// localized atom class {Z, Z[1/m], Z/q} with tensor, Tor and Kunneth.

#include <map>
#include <string>
#include <vector>

#include "solhom/linalg.hpp"

namespace solhom {

class FgAbGroup {
 public:
  FgAbGroup() = default;
  /// Torsion factors are normalized into an invariant-factor chain; 1s are dropped.
  FgAbGroup(std::size_t free_rank, std::vector<Int> torsion);

  /// Cokernel of the relation matrix (one relation per row).
  static FgAbGroup from_presentation(std::size_t num_generators, const IntMatrix& relations);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Int>& torsion() const noexcept { return torsion_; }
  std::size_t num_generators() const noexcept { return free_rank_ + torsion_.size(); }
  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  /// Order of the i-th generator (0 for free generators).
  Int generator_order(std::size_t i) const;
  /// Relation matrix reproducing this group (diagonal of torsion factors).
  IntMatrix relations() const;

  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }
  std::string to_string() const;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Int> torsion_;
};

/// Homomorphism given on generators (free generators first, then torsion).
/// Column j is the image of source generator j.
class GroupHom {
 public:
  GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

  const FgAbGroup& source() const noexcept { return source_; }
  const FgAbGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }
  bool is_endomorphism() const { return source_ == target_; }
  GroupHom compose(const GroupHom& inner) const;  ///< this o inner

 private:
  FgAbGroup source_, target_;
  IntMatrix matrix_;
};

struct Atom {
  enum class Kind { Integers, Localized, Cyclic };
  Kind kind = Kind::Integers;
  Int m;  ///< squarefree m >= 2 for Localized, order q >= 2 for Cyclic

  static Atom integers() { return {}; }
  /// Z[1/m] canonicalized by the radical of m; m = 1 gives Z.
  static Atom localized(const Int& m);
  static Atom cyclic(const Int& q);

  bool torsion_free() const noexcept { return kind != Kind::Cyclic; }
  friend bool operator==(const Atom& a, const Atom& b) { return a.kind == b.kind && a.m == b.m; }
  friend bool operator<(const Atom& a, const Atom& b);
  std::string to_string() const;
};

/// Finite direct sum of atoms, kept sorted.
class LocalizedForm {
 public:
  LocalizedForm() = default;
  explicit LocalizedForm(std::vector<Atom> atoms);
  static LocalizedForm from_group(const FgAbGroup& g);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool is_zero() const noexcept { return atoms_.empty(); }
  std::size_t q_rank() const;

  LocalizedForm operator+(const LocalizedForm& other) const;  ///< direct sum
  friend bool operator==(const LocalizedForm& a, const LocalizedForm& b) { return a.atoms_ == b.atoms_; }
  /// "Z[1/6]^2 + Z/2", or "0".
  std::string to_string() const;
  /// Inverse of to_string.
  static LocalizedForm parse(const std::string& text);

 private:
  std::vector<Atom> atoms_;
};

LocalizedForm tensor(const Atom& a, const Atom& b);
LocalizedForm tor(const Atom& a, const Atom& b);
LocalizedForm tensor(const LocalizedForm& a, const LocalizedForm& b);
LocalizedForm tor(const LocalizedForm& a, const LocalizedForm& b);

using GradedForm = std::map<int, LocalizedForm>;

/// Degree k of the result is the sum of tensor terms with a + b = k and Tor
/// terms with a + b = k - 1. Zero degrees are omitted.
GradedForm kunneth(const GradedForm& a, const GradedForm& b);

}  // namespace solhom
