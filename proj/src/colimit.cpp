#include "solhom/colimit.hpp"

#include <cmath>
#include <set>

#include "solhom/errors.hpp"

namespace solhom {

namespace {

// Subgroup of Z^t / diag(q) generated by the columns of M, as an abstract group.
FgAbGroup generated_subgroup(const IntMatrix& M, const std::vector<Int>& q) {
  const std::size_t t = q.size();
  if (t == 0) return {};
  IntMatrix gens(t, M.cols() + t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) gens(i, j) = M(i, j);
    gens(i, M.cols() + i) = q[i];
  }
  const IntMatrix B = column_lattice(gens);
  // relations of the subgroup: B^{-1} diag(q)
  const RatMatrix R = inverse(to_rat(B)) * to_rat(IntMatrix::diagonal(q));
  return FgAbGroup::from_presentation(t, to_int(R, "subgroup relation matrix").transpose());
}

}  // namespace

ColimitGroup::ColimitGroup(RatMatrix lattice, RatMatrix endo, std::optional<TorsionSystem> torsion)
    : lattice_(std::move(lattice)), endo_(std::move(endo)), torsion_(std::move(torsion)) {
  if (!lattice_.square() || !endo_.square() || lattice_.rows() != endo_.rows())
    throw DimensionMismatch("colimit lattice and endomorphism must be square of the same size");
  const std::size_t r = lattice_.rows();
  if (r > 0) {
    if (det(lattice_) == 0) throw OutOfRange("colimit lattice is degenerate");
    if (det(endo_) == 0) throw OutOfRange("colimit endomorphism is not invertible");
  }
  lattice_inv_ = inverse(lattice_);
  const RatMatrix in_basis = lattice_inv_ * endo_ * lattice_;
  if (!is_integral(in_basis)) throw FlatteningFailure("endomorphism does not preserve the lattice");
  endo_basis_ = to_int(in_basis);
  if (torsion_) {
    if (torsion_->group.free_rank() != 0) throw OutOfRange("torsion system must be finite");
    // Validates the shape and torsion compatibility.
    GroupHom(torsion_->group, torsion_->group, torsion_->endo);
    if (torsion_->group.is_trivial()) torsion_.reset();
  }
}

ColimitGroup ColimitGroup::from_integer_endo(const IntMatrix& A, std::optional<TorsionSystem> torsion) {
  return ColimitGroup(RatMatrix::identity(A.rows()), to_rat(A), std::move(torsion));
}

RatVector ColimitGroup::lattice_coords(const RatVector& x) const {
  if (x.size() != ambient_rank()) throw DimensionMismatch("vector does not live in the ambient space");
  return lattice_inv_.apply(x);
}

FgAbGroup ColimitGroup::torsion_colimit() const {
  if (!torsion_) return {};
  const auto& q = torsion_->group.torsion();
  Int order = 1;
  for (const auto& x : q) order *= x;
  // Images decrease strictly until they stabilize, so Omega(order) steps suffice.
  const unsigned steps = big_omega(order) + 1;
  IntMatrix P = IntMatrix::identity(q.size());
  for (unsigned i = 0; i < steps; ++i) {
    P = torsion_->endo * P;
    for (std::size_t r = 0; r < P.rows(); ++r)
      for (std::size_t c = 0; c < P.cols(); ++c) mpz_fdiv_r(P(r, c).get_mpz_t(), P(r, c).get_mpz_t(), q[r].get_mpz_t());
  }
  return generated_subgroup(P, q);
}

MembershipResult membership(const RatVector& x, const ColimitGroup& G, double cap_multiplier) {
  const RatVector y = G.lattice_coords(x);
  MembershipResult res;
  Int D = 1;
  for (const auto& c : y) D = lcm(D, c.get_den());
  if (D == 1) {
    res.member = true;
    return res;
  }
  const std::size_t r = G.ambient_rank();
  res.bound = static_cast<unsigned long>(r) * big_omega(D);
  const auto cap = static_cast<unsigned long>(std::floor(cap_multiplier * static_cast<double>(res.bound)));
  // z = D y; T^n y is integral iff A^n z = 0 mod D.
  IntVector z(r);
  for (std::size_t i = 0; i < r; ++i) z[i] = y[i].get_num() * (D / y[i].get_den());
  const IntMatrix& A = G.endo_in_basis();
  const unsigned long limit = std::max(cap, res.bound);
  for (unsigned long n = 0; n <= limit; ++n) {
    if (n > cap) {
      res.cap_hit = true;
      return res;
    }
    bool zero = true;
    for (auto& c : z) {
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), D.get_mpz_t());
      if (c != 0) zero = false;
    }
    if (zero) {
      if (n > res.bound) throw InternalCheckFailure("membership witness exceeds the proven bound");
      res.member = true;
      res.witness = n;
      return res;
    }
    z = A.apply(z);
  }
  return res;
}

std::size_t mod_p_dimension(const ColimitGroup& G, const Int& p) {
  std::size_t dim = G.ambient_rank() == 0 ? 0 : stable_rank_mod_p(G.endo_in_basis(), p);
  const FgAbGroup tors = G.torsion_colimit();
  for (const auto& q : tors.torsion())
    if (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) ++dim;
  return dim;
}

namespace {

std::set<Int> relevant_primes(const ColimitGroup& G) {
  std::set<Int> primes;
  if (G.ambient_rank() > 0) {
    const Int d = det(G.endo_in_basis());
    for (const auto& [p, e] : factor(d)) primes.insert(p);
  }
  const FgAbGroup tors = G.torsion_colimit();
  for (const auto& q : tors.torsion())
    for (const auto& [p, e] : factor(q)) primes.insert(p);
  return primes;
}

}  // namespace

InvariantSignature signature(const ColimitGroup& G) {
  InvariantSignature s;
  s.q_rank = G.ambient_rank();
  s.torsion_colimit = G.torsion_colimit();
  for (const auto& p : relevant_primes(G)) s.mod_p_dims[p] = mod_p_dimension(G, p);
  return s;
}

bool signatures_agree(const ColimitGroup& a, const ColimitGroup& b) {
  if (a.ambient_rank() != b.ambient_rank()) return false;
  if (!(a.torsion_colimit() == b.torsion_colimit())) return false;
  std::set<Int> primes = relevant_primes(a);
  for (const auto& p : relevant_primes(b)) primes.insert(p);
  for (const auto& p : primes)
    if (mod_p_dimension(a, p) != mod_p_dimension(b, p)) return false;
  return true;
}

namespace {

LocalizedForm torsion_atoms(const ColimitGroup& G) {
  std::vector<Atom> atoms;
  const FgAbGroup tors = G.torsion_colimit();
  for (const auto& q : tors.torsion()) atoms.push_back(Atom::cyclic(q));
  return LocalizedForm(std::move(atoms));
}

}  // namespace

LocalizedForm canonical_form_rank1(const ColimitGroup& G) {
  if (G.ambient_rank() != 1) throw OutOfRange("canonical rank-1 form requested for rank " + std::to_string(G.ambient_rank()));
  return LocalizedForm({Atom::localized(G.endo_in_basis()(0, 0))}) + torsion_atoms(G);
}

std::string to_string(NameProvenance p) {
  switch (p) {
    case NameProvenance::Rank1:
      return "canonical_form_rank1";
    case NameProvenance::DiagonalEndo:
      return "diagonal_endomorphism";
    case NameProvenance::Unimodular:
      return "unimodular_endomorphism";
    case NameProvenance::None:
      return "signature_only";
  }
  return {};
}

CertifiedName certified_name(const ColimitGroup& G) {
  const std::size_t r = G.ambient_rank();
  const IntMatrix& A = G.endo_in_basis();
  if (r == 1) return {canonical_form_rank1(G), NameProvenance::Rank1};
  if (r == 0 || abs(det(A)) == 1)
    return {LocalizedForm(std::vector<Atom>(r, Atom::integers())) + torsion_atoms(G), NameProvenance::Unimodular};
  bool diagonal = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (i != j && A(i, j) != 0) diagonal = false;
  if (diagonal) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < r; ++i) atoms.push_back(Atom::localized(A(i, i)));
    return {LocalizedForm(std::move(atoms)) + torsion_atoms(G), NameProvenance::DiagonalEndo};
  }
  return {};
}

bool equal_commuting(const ColimitGroup& a, const ColimitGroup& b, double cap_multiplier) {
  if (a.ambient_rank() != b.ambient_rank()) throw DimensionMismatch("colimits live in different ambient spaces");
  if (!(a.endo() * b.endo() == b.endo() * a.endo())) throw NonCommuting("endomorphisms do not commute");
  if (!(a.torsion_colimit() == b.torsion_colimit())) return false;
  // G = G' iff L, T^{-1} L' lie in G' and L', T'^{-1} L lie in G.
  auto covered = [&](const ColimitGroup& g, const ColimitGroup& h) {
    const RatMatrix Tinv = inverse(g.endo());
    const RatMatrix shifted = Tinv * h.lattice();
    for (std::size_t j = 0; j < g.ambient_rank(); ++j) {
      const auto m1 = membership(g.lattice().col(j), h, cap_multiplier);
      const auto m2 = membership(shifted.col(j), h, cap_multiplier);
      if (m1.cap_hit || m2.cap_hit) throw InternalCheckFailure("membership search was truncated by the cap");
      if (!m1.member || !m2.member) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

}  // namespace solhom
