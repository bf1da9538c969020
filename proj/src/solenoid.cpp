#include "solhom/solenoid.hpp"

#include <algorithm>

#include "solhom/errors.hpp"

namespace solhom {

std::string to_string(Place::Kind k) {
  switch (k) {
    case Place::Kind::Finite:
      return "finite";
    case Place::Kind::Real:
      return "real";
    case Place::Kind::Complex:
      return "complex";
  }
  return {};
}

namespace {

unsigned generator_search_bound(std::size_t degree) {
  switch (degree) {
    case 1:
    case 2:
      return 200;
    case 3:
      return 20;
    default:
      return 6;
  }
}

FractionalIdeal prime_power(const NumberField& K, const PrimeIdeal& P, long e) {
  return FractionalIdeal::from_prime(P).power(K, e);
}

// Cheap candidates first (basis vectors of I), then the bounded search.
std::optional<NfElement> principal_generator(const NumberField& K, const FractionalIdeal& I) {
  const RatMatrix B = I.basis();
  for (std::size_t j = 0; j < B.cols(); ++j) {
    const NfElement x = K.from_integral_coords(B.col(j));
    if (!K.is_zero(x) && FractionalIdeal::principal(K, x) == I) return x;
  }
  return find_generator(K, I, generator_search_bound(K.degree()));
}

}  // namespace

Int integrality_scale(const QPoly& m) {
  const std::size_t n = m.degree();
  Int D = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    const Rat a = m.coeff(n - i);
    if (a == 0) continue;
    for (const auto& [p, e] : factor(a.get_den())) {
      const unsigned need = (e + static_cast<unsigned>(i) - 1) / static_cast<unsigned>(i);
      const unsigned have = valuation(D, p);
      if (need > have) D *= ipow(p, need - have);
    }
  }
  return D;
}

SolenoidSystem build_system(const Rat& c) {
  auto K = std::make_shared<const NumberField>(NumberField::rationals());
  return build_system(K, K->from_rational(c));
}

SolenoidSystem build_system(const QPoly& min_poly, const std::optional<QPoly>& element, const std::string& var) {
  if (min_poly.degree() < 1) throw OutOfRange("minimal polynomial must have positive degree");
  const QPoly m = min_poly.monic();
  const Int D = integrality_scale(m);
  // theta = D * root has monic integral minimal polynomial D^n m(y / D).
  const QPoly f = Rat(ipow(D, m.degree())) * m.scale_variable(Rat(1) / Rat(D));
  if (!is_irreducible(f)) throw Unsupported("minimal polynomial " + min_poly.to_string(var) + " is reducible over Q");
  auto K = std::make_shared<const NumberField>(f, Rat(D), var);
  const NfElement c = K->from_user_poly(element ? *element : QPoly::x());
  return build_system(K, c);
}

SolenoidSystem build_system(std::shared_ptr<const NumberField> Kp, const NfElement& c) {
  const NumberField& K = *Kp;
  if (K.is_zero(c)) throw ZeroInput("c must be nonzero");
  if (!K.generates_field(c)) throw Unsupported("c = " + K.to_string(c) + " does not generate the field");

  SolenoidSystem sys;
  sys.K = std::move(Kp);
  sys.c = c;

  const QPoly chi = K.char_poly(c);
  const UnitDiskCount disk = roots_in_unit_disk(chi);  // BoundaryRoot on |conjugate| = 1
  sys.d = disk.inside;

  for (const auto& [P, v] : K.factor_element(c)) {
    Place pl;
    pl.kind = Place::Kind::Finite;
    pl.prime = P;
    pl.v_c = v;
    pl.contracting = v > 0;
    sys.places.push_back(pl);
    (v > 0 ? sys.stable_finite : sys.unstable_finite).emplace_back(P, v);
  }

  const std::size_t real_total = real_root_count(chi);
  const std::size_t real_inside = real_roots_in_interval(chi, Rat(-1), Rat(1));
  const std::size_t complex_inside = (disk.inside - real_inside) / 2;
  const std::size_t complex_total = (K.degree() - real_total) / 2;
  for (std::size_t i = 0; i < real_total; ++i) {
    Place pl;
    pl.kind = Place::Kind::Real;
    pl.dim_R = 1;
    pl.contracting = i < real_inside;
    sys.places.push_back(pl);
  }
  for (std::size_t i = 0; i < complex_total; ++i) {
    Place pl;
    pl.kind = Place::Kind::Complex;
    pl.dim_R = 2;
    pl.contracting = i < complex_inside;
    sys.places.push_back(pl);
  }
  if (real_roots_in_interval(chi, Rat(-1), Rat(0)) % 2) sys.epsilon = -1;

  sys.N = 1;
  for (const auto& [P, v] : sys.stable_finite) sys.N *= ipow(P.norm(), static_cast<unsigned long>(v));

  sys.g = K.one();
  sys.h = 1;
  if (!sys.unstable_finite.empty()) {
    FractionalIdeal base = FractionalIdeal::unit(K);
    for (const auto& [P, v] : sys.unstable_finite) base = base.multiply(K, prime_power(K, P, -v));
    bool found = false;
    for (unsigned h = 1; h <= kMaxPrincipalizationExponent && !found; ++h) {
      if (auto gen = principal_generator(K, base.power(K, h))) {
        sys.h = h;
        sys.g = *gen;
        found = true;
      }
    }
    if (!found)
      throw Unsupported("no principal power of the unstable ideal product found up to exponent " +
                        std::to_string(kMaxPrincipalizationExponent));
  }
  return sys;
}

SolenoidSystem inverse_system(const SolenoidSystem& sys) { return build_system(sys.K, sys.K->inv(sys.c)); }

FractionalIdeal gamma_lattice(const SolenoidSystem& sys, long n, long k) {
  if (k < 0) throw OutOfRange("gamma_lattice needs k >= 0");
  const NumberField& K = sys.field();
  FractionalIdeal I = FractionalIdeal::unit(K);
  for (const auto& [P, v] : sys.stable_finite) I = I.multiply(K, prime_power(K, P, n * v));
  for (const auto& [P, v] : sys.unstable_finite) I = I.multiply(K, prime_power(K, P, k * v));
  return I;
}

Int transfer_index(const SolenoidSystem& sys, long k) { return ideal_index(gamma_lattice(sys, 0, k), gamma_lattice(sys, 1, k)); }

Int periodic_points(const SolenoidSystem& sys, unsigned long n) {
  const NumberField& K = sys.field();
  const NfElement x = K.sub(K.pow(sys.c, static_cast<long>(n)), K.one());
  if (K.is_zero(x)) throw DegenerateFix("c^" + std::to_string(n) + " = 1");
  Int count = 1;
  for (const auto& [P, v] : K.factor_element(x))
    if (v > 0) count *= ipow(P.norm(), static_cast<unsigned long>(v));
  return count;
}

}  // namespace solhom
