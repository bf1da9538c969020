#pragma once

// Groupoid homology and K-theory of solenoid systems as stationary colimits
// of exterior powers, plus the HK comparison, Lefschetz traces, the positive
// cone, transfer colimits of finite-index towers, and Kunneth products.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solhom/colimit.hpp"
#include "solhom/solenoid.hpp"

namespace solhom {

enum class Side { Unstable, Stable };
std::string to_string(Side s);

struct HomologyEntry {
  ColimitGroup group;
  std::string action;  ///< how the connecting endomorphism acts, for display
};

struct GradedGroup {
  std::map<int, HomologyEntry> entries;
};

/// H_k = colim(wedge^k O_K, delta_k) with delta_k = N wedge^k m_{g c^{-1}}, 0 <= k <= deg K.
/// Throws FlatteningFailure if a lattice-preservation check fails.
GradedGroup finite_part_homology(const SolenoidSystem& sys);

/// Finite part of the chosen side (c, or c^{-1} for the stable side), shifted down by its d.
GradedGroup groupoid_homology(const SolenoidSystem& sys, Side side = Side::Unstable);

struct KTheory {
  std::array<ColimitGroup, 2> K;
  std::array<std::vector<int>, 2> finite_degrees;  ///< exterior degrees summed into each K_i
};

/// K_i as the colimit over the lattices wedge^k(Gamma_0^h), k = i + d mod 2.
KTheory k_theory(const SolenoidSystem& sys, Side side = Side::Unstable);

enum class HkVerdict { Equal, InvariantsAgree, Differ };
std::string to_string(HkVerdict v);

struct HkResult {
  std::array<HkVerdict, 2> verdict{HkVerdict::Differ, HkVerdict::Differ};
  std::array<std::size_t, 2> k_rank{0, 0};
  std::size_t h_rank = 0;  ///< sum of q-ranks of all homology groups
};

HkResult hk_check(const SolenoidSystem& sys, Side side = Side::Unstable, double cap_multiplier = 10.0);

/// (-1)^d epsilon^n sum_k (-1)^k tr(theta_k^n), theta_k = N wedge^k m_{c^{-1}}.
/// Throws DegenerateFix when c^n = 1.
Rat lefschetz_trace(const SolenoidSystem& sys, unsigned long n);

/// x maps exterior degree to a vector in that degree's coordinates; only even
/// degrees (the K_0 summands of the finite part) may appear. Throws
/// HypothesisN1 when N = 1 and NotAnElement when a component is not in H_k.
bool positive_cone_contains(const SolenoidSystem& sys, const std::map<int, RatVector>& x);

/// Colimit per degree of a stationary system given by a transfer endomorphism.
/// Free and torsion parts must not mix.
GradedGroup transfer_colimit(const std::vector<FgAbGroup>& groups, const std::vector<IntMatrix>& transfers);

/// Certified LocalizedForm of every entry; throws AtomClassExceeded otherwise.
GradedForm as_forms(const GradedGroup& g);
GradedForm kunneth_product(const GradedGroup& a, const GradedGroup& b);

struct NamedColimit {
  std::string name;
  ColimitGroup group;
};

struct EntryName {
  std::string text;
  std::string provenance;  ///< a NameProvenance string, or "equal_commuting"
  std::optional<LocalizedForm> form;
};

/// Certified name when available, else a matching named candidate, else a signature-only description.
EntryName name_entry(const ColimitGroup& G, const std::vector<NamedColimit>& candidates = {}, double cap_multiplier = 10.0);

}  // namespace solhom
