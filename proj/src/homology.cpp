#include "solhom/homology.hpp"

#include "solhom/errors.hpp"

namespace solhom {

std::string to_string(Side s) { return s == Side::Stable ? "stable" : "unstable"; }

std::string to_string(HkVerdict v) {
  switch (v) {
    case HkVerdict::Equal:
      return "equal";
    case HkVerdict::InvariantsAgree:
      return "invariants-agree";
    case HkVerdict::Differ:
      return "differ";
  }
  return {};
}

namespace {

RatMatrix wedge(const RatMatrix& A, std::size_t k) {
  if (k == 0) return RatMatrix::identity(1);
  return exterior_power_matrix(A, k);
}

struct Connecting {
  std::vector<RatMatrix> delta;  // indexed by exterior degree
  std::vector<std::string> label;
};

Connecting connecting_maps(const SolenoidSystem& sys) {
  const NumberField& K = sys.field();
  const std::size_t n = K.degree();
  const NfElement t = K.mul(K.from_rational(Rat(sys.N)), K.mul(sys.g, K.inv(sys.c)));
  const RatMatrix mt = K.mult_matrix(K.mul(sys.g, K.inv(sys.c)));
  const RatMatrix mg = K.mult_matrix(sys.g);
  Connecting out;
  for (std::size_t k = 0; k <= n; ++k) {
    if (!is_integral(wedge(mg, k)))
      throw FlatteningFailure("wedge^" + std::to_string(k) + " of multiplication by g does not preserve the lattice");
    out.delta.push_back(Rat(sys.N) * wedge(mt, k));
    std::string label;
    if (k == 0)
      label = "multiplication by " + to_string(sys.N);
    else if (k == n)
      label = "multiplication by " + to_string(Rat(sys.N) * K.norm(K.mul(sys.g, K.inv(sys.c))));
    else if (k == 1)
      label = "multiplication by " + K.to_string(t);
    else
      label = to_string(sys.N) + " * wedge^" + std::to_string(k) + "(multiplication by " +
              K.to_string(K.mul(sys.g, K.inv(sys.c))) + ")";
    out.label.push_back(label);
  }
  return out;
}

ColimitGroup direct_sum(const std::vector<RatMatrix>& lattices, const std::vector<RatMatrix>& endos) {
  if (lattices.empty()) return ColimitGroup(RatMatrix(0, 0), RatMatrix(0, 0));
  return ColimitGroup(block_diagonal(lattices), block_diagonal(endos));
}

const SolenoidSystem& pick_side(const SolenoidSystem& sys, Side side, std::optional<SolenoidSystem>& storage) {
  if (side == Side::Unstable) return sys;
  storage = inverse_system(sys);
  return *storage;
}

}  // namespace

GradedGroup finite_part_homology(const SolenoidSystem& sys) {
  const Connecting conn = connecting_maps(sys);
  GradedGroup out;
  for (std::size_t k = 0; k < conn.delta.size(); ++k) {
    const std::size_t r = conn.delta[k].rows();
    out.entries.emplace(static_cast<int>(k), HomologyEntry{ColimitGroup(RatMatrix::identity(r), conn.delta[k]), conn.label[k]});
  }
  return out;
}

GradedGroup groupoid_homology(const SolenoidSystem& sys, Side side) {
  std::optional<SolenoidSystem> storage;
  const SolenoidSystem& s = pick_side(sys, side, storage);
  const GradedGroup fin = finite_part_homology(s);
  GradedGroup out;
  for (const auto& [k, e] : fin.entries) out.entries.emplace(k - static_cast<int>(s.d), e);
  return out;
}

KTheory k_theory(const SolenoidSystem& sys, Side side) {
  std::optional<SolenoidSystem> storage;
  const SolenoidSystem& s = pick_side(sys, side, storage);
  const Connecting conn = connecting_maps(s);
  const RatMatrix base = gamma_lattice(s, 0, s.h).basis();
  KTheory out;
  for (int i = 0; i < 2; ++i) {
    std::vector<RatMatrix> lattices, endos;
    for (std::size_t k = 0; k < conn.delta.size(); ++k) {
      if ((static_cast<int>(k) - static_cast<int>(s.d) - i) % 2 != 0) continue;
      lattices.push_back(wedge(base, k));
      endos.push_back(conn.delta[k]);
      out.finite_degrees[i].push_back(static_cast<int>(k));
    }
    out.K[i] = direct_sum(lattices, endos);
  }
  return out;
}

HkResult hk_check(const SolenoidSystem& sys, Side side, double cap_multiplier) {
  const KTheory kt = k_theory(sys, side);
  std::optional<SolenoidSystem> storage;
  const SolenoidSystem& s = pick_side(sys, side, storage);
  const GradedGroup fin = finite_part_homology(s);
  HkResult res;
  for (const auto& [k, e] : fin.entries) res.h_rank += e.group.ambient_rank();
  for (int i = 0; i < 2; ++i) {
    std::vector<RatMatrix> lattices, endos;
    for (int k : kt.finite_degrees[i]) {
      lattices.push_back(fin.entries.at(k).group.lattice());
      endos.push_back(fin.entries.at(k).group.endo());
    }
    const ColimitGroup H = direct_sum(lattices, endos);
    res.k_rank[i] = kt.K[i].ambient_rank();
    try {
      res.verdict[i] = equal_commuting(kt.K[i], H, cap_multiplier) ? HkVerdict::Equal : HkVerdict::Differ;
    } catch (const NonCommuting&) {
      res.verdict[i] = signatures_agree(kt.K[i], H) ? HkVerdict::InvariantsAgree : HkVerdict::Differ;
    }
  }
  return res;
}

Rat lefschetz_trace(const SolenoidSystem& sys, unsigned long n) {
  const NumberField& K = sys.field();
  const NfElement cn = K.pow(sys.c, static_cast<long>(n));
  if (K.is_zero(K.sub(cn, K.one()))) throw DegenerateFix("c^" + std::to_string(n) + " = 1");
  // sum_k (-1)^k tr(wedge^k M) = det(I - M) = char_poly_M(1)
  const Rat alternating = rpow(Rat(sys.N), static_cast<long>(n)) * K.char_poly(K.inv(cn))(Rat(1));
  long sign = (sys.d % 2) ? -1 : 1;
  if (sys.epsilon < 0 && n % 2) sign = -sign;
  return Rat(sign) * alternating;
}

bool positive_cone_contains(const SolenoidSystem& sys, const std::map<int, RatVector>& x) {
  if (sys.N == 1) throw HypothesisN1("the positive cone description needs N > 1");
  const GradedGroup fin = finite_part_homology(sys);
  bool zero = true;
  for (const auto& [k, v] : x) {
    if (k % 2 != 0 || !fin.entries.count(k))
      throw NotAnElement("degree " + std::to_string(k) + " is not a summand of K_0");
    const ColimitGroup& G = fin.entries.at(k).group;
    if (v.size() != G.ambient_rank())
      throw NotAnElement("component in degree " + std::to_string(k) + " has the wrong length");
    const auto m = membership(v, G);
    if (m.cap_hit) throw InternalCheckFailure("membership search was truncated by the cap");
    if (!m.member) throw NotAnElement("component in degree " + std::to_string(k) + " does not lie in H_" + std::to_string(k));
    for (const auto& c : v)
      if (c != 0) zero = false;
  }
  if (zero) return true;
  const auto it = x.find(0);
  return it != x.end() && it->second[0] > 0;
}

GradedGroup transfer_colimit(const std::vector<FgAbGroup>& groups, const std::vector<IntMatrix>& transfers) {
  if (groups.size() != transfers.size()) throw DimensionMismatch("one transfer per degree is required");
  GradedGroup out;
  for (std::size_t deg = 0; deg < groups.size(); ++deg) {
    const FgAbGroup& G = groups[deg];
    const GroupHom T(G, G, transfers[deg]);
    const std::size_t r = G.free_rank(), t = G.torsion().size();
    IntMatrix A(r, r), D(t, t);
    for (std::size_t i = 0; i < r + t; ++i)
      for (std::size_t j = 0; j < r + t; ++j) {
        const Int& v = T.matrix()(i, j);
        if (i < r && j < r)
          A(i, j) = v;
        else if (i >= r && j >= r)
          D(i - r, j - r) = v;
        else if (v != 0)
          throw Unsupported("transfer in degree " + std::to_string(deg) + " mixes free and torsion parts");
      }
    std::optional<TorsionSystem> tors;
    if (t > 0) tors = TorsionSystem{FgAbGroup(0, G.torsion()), D};
    std::string label = "transfer " + to_string(transfers[deg]);
    out.entries.emplace(static_cast<int>(deg), HomologyEntry{ColimitGroup::from_integer_endo(A, tors), label});
  }
  return out;
}

GradedForm as_forms(const GradedGroup& g) {
  GradedForm out;
  for (const auto& [k, e] : g.entries) {
    const auto name = certified_name(e.group);
    if (!name.form)
      throw AtomClassExceeded("degree " + std::to_string(k) + " has no certified form in the atom class");
    if (!name.form->is_zero()) out[k] = *name.form;
  }
  return out;
}

GradedForm kunneth_product(const GradedGroup& a, const GradedGroup& b) { return kunneth(as_forms(a), as_forms(b)); }

EntryName name_entry(const ColimitGroup& G, const std::vector<NamedColimit>& candidates, double cap_multiplier) {
  const auto cert = certified_name(G);
  if (cert.form) return {cert.form->to_string(), to_string(cert.provenance), cert.form};
  for (const auto& c : candidates) {
    if (c.group.ambient_rank() != G.ambient_rank()) continue;
    try {
      if (equal_commuting(G, c.group, cap_multiplier)) return {c.name, "equal_commuting", std::nullopt};
    } catch (const NonCommuting&) {
    }
  }
  return {"rank " + std::to_string(G.ambient_rank()) + " colimit", to_string(NameProvenance::None), std::nullopt};
}

}  // namespace solhom
