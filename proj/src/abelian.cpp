#include "solhom/abelian.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "solhom/errors.hpp"

namespace solhom {

FgAbGroup::FgAbGroup(std::size_t free_rank, std::vector<Int> torsion) : free_rank_(free_rank) {
  if (torsion.empty()) return;
  for (const auto& q : torsion)
    if (q <= 0) throw OutOfRange("torsion orders must be positive");
  const auto d = invariant_factors(IntMatrix::diagonal(torsion));
  for (const auto& x : d)
    if (x > 1) torsion_.push_back(x);
}

FgAbGroup FgAbGroup::from_presentation(std::size_t num_generators, const IntMatrix& relations) {
  if (relations.rows() > 0 && relations.cols() != num_generators)
    throw DimensionMismatch("relation matrix must have one column per generator");
  if (relations.rows() == 0) return FgAbGroup(num_generators, {});
  const auto d = invariant_factors(relations);
  std::size_t free = num_generators - d.size();
  std::vector<Int> tors;
  for (const auto& x : d) {
    if (x == 0)
      ++free;
    else if (x > 1)
      tors.push_back(x);
  }
  return FgAbGroup(free, tors);
}

Int FgAbGroup::generator_order(std::size_t i) const {
  if (i >= num_generators()) throw OutOfRange("generator index out of range");
  return i < free_rank_ ? Int(0) : torsion_[i - free_rank_];
}

IntMatrix FgAbGroup::relations() const {
  const std::size_t n = num_generators();
  IntMatrix R(torsion_.size(), n);
  for (std::size_t i = 0; i < torsion_.size(); ++i) R(i, free_rank_ + i) = torsion_[i];
  return R;
}

std::string FgAbGroup::to_string() const { return LocalizedForm::from_group(*this).to_string(); }

GroupHom::GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.num_generators() || matrix_.cols() != source_.num_generators())
    throw DimensionMismatch("homomorphism matrix shape does not match the groups");
  for (std::size_t i = 0; i < matrix_.rows(); ++i) {
    const Int t = target_.generator_order(i);
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
      if (t != 0) mpz_fdiv_r(matrix_(i, j).get_mpz_t(), matrix_(i, j).get_mpz_t(), t.get_mpz_t());
      const Int q = source_.generator_order(j);
      if (q == 0) continue;
      const Int image = matrix_(i, j) * q;
      const bool killed = t == 0 ? image == 0 : mpz_divisible_p(image.get_mpz_t(), t.get_mpz_t()) != 0;
      if (!killed) throw OutOfRange("homomorphism does not respect torsion orders");
    }
  }
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
  if (!(inner.target_ == source_)) throw DimensionMismatch("composition of incompatible homomorphisms");
  return GroupHom(inner.source_, target_, matrix_ * inner.matrix_);
}

// ---------------------------------------------------------------------------

Atom Atom::localized(const Int& m) {
  if (m == 0) throw OutOfRange("Z[1/0] is not defined");
  const Int r = radical(m);
  if (r == 1) return integers();
  return {Kind::Localized, r};
}

Atom Atom::cyclic(const Int& q) {
  if (q < 2) throw OutOfRange("cyclic atom needs order at least 2");
  return {Kind::Cyclic, q};
}

bool operator<(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  return a.m < b.m;
}

std::string Atom::to_string() const {
  switch (kind) {
    case Kind::Integers:
      return "Z";
    case Kind::Localized:
      return "Z[1/" + solhom::to_string(m) + "]";
    case Kind::Cyclic:
      return "Z/" + solhom::to_string(m);
  }
  return {};
}

LocalizedForm::LocalizedForm(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
}

LocalizedForm LocalizedForm::from_group(const FgAbGroup& g) {
  std::vector<Atom> atoms(g.free_rank(), Atom::integers());
  for (const auto& q : g.torsion()) atoms.push_back(Atom::cyclic(q));
  return LocalizedForm(std::move(atoms));
}

std::size_t LocalizedForm::q_rank() const {
  return static_cast<std::size_t>(std::count_if(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.torsion_free(); }));
}

LocalizedForm LocalizedForm::operator+(const LocalizedForm& other) const {
  std::vector<Atom> all = atoms_;
  all.insert(all.end(), other.atoms_.begin(), other.atoms_.end());
  return LocalizedForm(std::move(all));
}

std::string LocalizedForm::to_string() const {
  if (atoms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < atoms_.size();) {
    std::size_t j = i;
    while (j < atoms_.size() && atoms_[j] == atoms_[i]) ++j;
    if (i) os << " + ";
    const std::string name = atoms_[i].to_string();
    const std::size_t mult = j - i;
    if (mult == 1)
      os << name;
    else if (atoms_[i].kind == Atom::Kind::Cyclic)
      os << '(' << name << ")^" << mult;
    else
      os << name << '^' << mult;
    i = j;
  }
  return os.str();
}

LocalizedForm LocalizedForm::parse(const std::string& text) {
  static const std::regex term(R"(^\s*(?:\(Z/(\d+)\)|Z/(\d+)|Z\[1/(\d+)\]|(Z))(?:\^(\d+))?\s*$)");
  std::vector<Atom> atoms;
  std::string t = text;
  if (t.find_first_not_of(' ') != std::string::npos && t.substr(t.find_first_not_of(' ')) == "0") return {};
  std::size_t start = 0;
  while (start <= t.size()) {
    std::size_t end = t.find('+', start);
    if (end == std::string::npos) end = t.size();
    const std::string piece = t.substr(start, end - start);
    std::smatch m;
    if (!std::regex_match(piece, m, term)) throw ParseError("unrecognized group term '" + piece + "'", start);
    Atom a;
    if (m[1].matched)
      a = Atom::cyclic(Int(m[1].str()));
    else if (m[2].matched)
      a = Atom::cyclic(Int(m[2].str()));
    else if (m[3].matched)
      a = Atom::localized(Int(m[3].str()));
    const std::size_t mult = m[5].matched ? std::stoul(m[5].str()) : 1;
    for (std::size_t i = 0; i < mult; ++i) atoms.push_back(a);
    start = end + 1;
  }
  return LocalizedForm(std::move(atoms));
}

LocalizedForm tensor(const Atom& a, const Atom& b) {
  using K = Atom::Kind;
  if (a.kind == K::Integers) return LocalizedForm({b});
  if (b.kind == K::Integers) return LocalizedForm({a});
  if (a.kind == K::Localized && b.kind == K::Localized) return LocalizedForm({Atom::localized(a.m * b.m)});
  if (a.kind == K::Cyclic && b.kind == K::Cyclic) {
    const Int g = gcd(a.m, b.m);
    return g > 1 ? LocalizedForm({Atom::cyclic(g)}) : LocalizedForm();
  }
  const Atom& loc = a.kind == K::Localized ? a : b;
  const Atom& cyc = a.kind == K::Cyclic ? a : b;
  const Int q = strip_primes(cyc.m, loc.m);
  return q > 1 ? LocalizedForm({Atom::cyclic(q)}) : LocalizedForm();
}

LocalizedForm tor(const Atom& a, const Atom& b) {
  if (a.torsion_free() || b.torsion_free()) return {};
  const Int g = gcd(a.m, b.m);
  return g > 1 ? LocalizedForm({Atom::cyclic(g)}) : LocalizedForm();
}

LocalizedForm tensor(const LocalizedForm& a, const LocalizedForm& b) {
  LocalizedForm out;
  for (const auto& x : a.atoms())
    for (const auto& y : b.atoms()) out = out + tensor(x, y);
  return out;
}

LocalizedForm tor(const LocalizedForm& a, const LocalizedForm& b) {
  LocalizedForm out;
  for (const auto& x : a.atoms())
    for (const auto& y : b.atoms()) out = out + tor(x, y);
  return out;
}

GradedForm kunneth(const GradedForm& a, const GradedForm& b) {
  GradedForm out;
  for (const auto& [da, ga] : a)
    for (const auto& [db, gb] : b) {
      out[da + db] = out[da + db] + tensor(ga, gb);
      out[da + db + 1] = out[da + db + 1] + tor(ga, gb);
    }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

}  // namespace solhom
