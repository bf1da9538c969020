#include "solhom/number_field.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <sstream>

#include "solhom/errors.hpp"
#include "solhom/fpoly.hpp"

namespace solhom {

namespace {

QPoly from_fp(const FpPoly& a, const Int& p, bool balanced) {
  std::vector<Rat> c;
  for (auto x : a) {
    Int v(static_cast<unsigned long>(x));
    if (balanced && 2 * v > p) v -= p;
    c.emplace_back(v);
  }
  return QPoly(std::move(c));
}

std::uint64_t small_prime(const Int& p) {
  if (p >= Int(1) << 62) throw Unsupported("prime " + to_string(p) + " is too large for residue factorization");
  return p.get_ui();
}

Int rat_to_int(const Rat& r) {
  if (r.get_den() != 1) throw InternalCheckFailure("expected an integer");
  return r.get_num();
}

// f'(C) for the companion matrix C of a monic polynomial, giving disc via its determinant.
RatMatrix companion(const QPoly& f) {
  const std::size_t n = f.degree();
  RatMatrix C(n, n);
  for (std::size_t i = 1; i < n; ++i) C(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) C(i, n - 1) = -f.coeffs()[i];
  return C;
}

}  // namespace

bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) {
  if (a.p != b.p) return a.p < b.p;
  if (a.f_res != b.f_res) return a.f_res < b.f_res;
  return a.basis.entries() < b.basis.entries();
}

Int poly_discriminant(const QPoly& f) {
  if (f.leading() != 1 || !f.is_integral()) throw OutOfRange("discriminant expects a monic integer polynomial");
  const std::size_t n = f.degree();
  if (n <= 1) return 1;
  const RatMatrix C = companion(f);
  const QPoly d = f.derivative();
  RatMatrix acc(n, n);
  for (int i = d.degree(); i >= 0; --i) {
    acc = acc * C;
    for (std::size_t k = 0; k < n; ++k) acc(k, k) += d.coeffs()[i];
  }
  Int r = rat_to_int(det(acc));
  if ((n * (n - 1) / 2) % 2) r = -r;
  return r;
}

bool is_irreducible(const QPoly& f_in) {
  const int n = f_in.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const QPoly f = f_in.monic();
  if (gcd(f, f.derivative()).degree() > 0) return false;
  // Rational roots of the integer rescaling.
  Int den = 1;
  for (const auto& c : f.coeffs()) den = lcm(den, c.get_den());
  const QPoly g = f.scale_variable(Rat(1) / Rat(den));  // roots scaled by den
  Rat lc = Rat(ipow(den, n));
  const QPoly gi = lc * g;  // monic integer
  const Int c0 = rat_to_int(gi.coeff(0));
  if (c0 == 0) return false;
  std::vector<Int> divisors{1};
  for (const auto& [p, e] : factor(c0)) {
    const std::size_t m = divisors.size();
    Int pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < m; ++i) divisors.push_back(divisors[i] * pk);
    }
  }
  for (const auto& d : divisors)
    if (gi(Rat(d)) == 0 || gi(Rat(-d)) == 0) return false;
  if (n <= 3) return true;

  // Degree-pattern sieve: a factor of degree k must show up as a subset sum
  // of residue factor degrees for every good prime.
  std::set<unsigned> possible;
  for (int k = 0; k <= n; ++k) possible.insert(k);
  const Int disc = poly_discriminant(gi);
  const auto coeffs = gi.int_coeffs();
  for (unsigned long p = 2; p < 200; ++p) {
    if (!is_prime(Int(p)) || mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
    std::set<unsigned> sums{0};
    for (unsigned d : factor_degrees_mod_p(coeffs, p)) {
      std::set<unsigned> next = sums;
      for (unsigned s : sums) next.insert(s + d);
      sums = std::move(next);
    }
    std::set<unsigned> keep;
    std::set_intersection(possible.begin(), possible.end(), sums.begin(), sums.end(), std::inserter(keep, keep.begin()));
    possible = std::move(keep);
    if (possible.size() == 2) return true;
  }
  throw Unsupported("cannot certify irreducibility of " + f_in.to_string());
}

// ---------------------------------------------------------------------------

NumberField::NumberField(const QPoly& f, Rat scale, std::string var) : f_(f), scale_(std::move(scale)), var_(std::move(var)) {
  if (f_.degree() < 1) throw OutOfRange("defining polynomial must have positive degree");
  if (f_.leading() != 1 || !f_.is_integral()) throw OutOfRange("defining polynomial must be monic with integer coefficients");
  n_ = f_.degree();
  disc_f_ = solhom::poly_discriminant(f_);
  setup_order();
}

NumberField NumberField::rationals() { return NumberField(QPoly::x()); }

void NumberField::setup_order() {
  B_ = RatMatrix::identity(n_);
  alpha_ = from_theta_poly(QPoly::x());
  alpha_poly_ = f_;
  if (n_ == 2) {
    const Int b = rat_to_int(f_.coeff(1)), c0 = rat_to_int(f_.coeff(0));
    const Int delta = b * b - 4 * c0;
    Int s = 1, d0 = delta < 0 ? -1 : 1;
    for (const auto& [p, e] : factor(delta)) {
      s *= ipow(p, e / 2);
      if (e % 2) d0 *= p;
    }
    d0_ = d0;
    d0_scale_ = s;
    // sqrt(D0) = (2 theta + b) / s in power coordinates
    const RatVector sqrt_d0{Rat(b) / Rat(s), Rat(2) / Rat(s)};
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), d0.get_mpz_t(), 4);
    if (r == 1) {
      alpha_ = NfElement{{(1 + sqrt_d0[0]) / 2, sqrt_d0[1] / 2}};
      alpha_poly_ = QPoly({Rat(Int((1 - d0) / 4)), Rat(-1), Rat(1)});
    } else {
      alpha_ = NfElement{sqrt_d0};
      alpha_poly_ = QPoly({Rat(-d0), Rat(0), Rat(1)});
    }
    B_(0, 1) = alpha_.coords[0];
    B_(1, 1) = alpha_.coords[1];
  } else if (n_ > 2) {
    // Dedekind criterion at every prime whose square divides disc(f).
    const auto fc = f_.int_coeffs();
    for (const auto& [p, e] : factor(disc_f_)) {
      if (e < 2) continue;
      const auto up = small_prime(p);
      const auto facs = factor_mod_p(fc, up);
      QPoly G = QPoly::constant(1);
      for (const auto& fac : facs) G = G * solhom::pow(from_fp(fac.poly, p, false), fac.multiplicity);
      const QPoly F = (Rat(1) / Rat(p)) * (f_ - G);
      const FpPoly Fbar = reduce_mod(F.int_coeffs(), up);
      bool maximal = true;
      for (const auto& fac : facs)
        if (fac.multiplicity >= 2 && fp_mod(Fbar, fac.poly, up).empty()) maximal = false;
      if (!maximal) obstructions_.push_back(p);
    }
  }
  B_inv_ = inverse(B_);
}

Int NumberField::order_discriminant() const {
  const Rat d = det(B_);
  return rat_to_int(Rat(disc_f_) * d * d);
}

NfElement NumberField::reduce(const QPoly& p) const {
  const QPoly r = p % f_;
  RatVector c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = r.coeff(i);
  return {c};
}

QPoly NumberField::as_theta_poly(const NfElement& x) const { return QPoly(x.coords); }

NfElement NumberField::zero() const { return {RatVector(n_)}; }
NfElement NumberField::one() const { return from_rational(1); }
NfElement NumberField::from_rational(const Rat& r) const {
  RatVector c(n_);
  c[0] = r;
  return {c};
}
NfElement NumberField::from_theta_poly(const QPoly& p) const { return reduce(p); }
std::optional<NfElement> NumberField::quadratic_root() const {
  if (!d0_) return std::nullopt;
  return NfElement{{f_.coeff(1) / Rat(d0_scale_), Rat(2) / Rat(d0_scale_)}};
}

NfElement NumberField::from_user_poly(const QPoly& p) const { return reduce(p.scale_variable(Rat(1) / scale_)); }
NfElement NumberField::from_integral_coords(const RatVector& v) const { return {B_.apply(v)}; }
RatVector NumberField::integral_coords(const NfElement& x) const { return B_inv_.apply(x.coords); }
bool NumberField::is_algebraic_integer(const NfElement& x) const { return is_integral(integral_coords(x)); }
bool NumberField::is_zero(const NfElement& x) const {
  return std::all_of(x.coords.begin(), x.coords.end(), [](const Rat& r) { return r == 0; });
}

NfElement NumberField::add(const NfElement& a, const NfElement& b) const {
  NfElement r = a;
  for (std::size_t i = 0; i < n_; ++i) r.coords[i] += b.coords[i];
  return r;
}
NfElement NumberField::sub(const NfElement& a, const NfElement& b) const {
  NfElement r = a;
  for (std::size_t i = 0; i < n_; ++i) r.coords[i] -= b.coords[i];
  return r;
}
NfElement NumberField::neg(const NfElement& a) const {
  NfElement r = a;
  for (auto& x : r.coords) x = -x;
  return r;
}
NfElement NumberField::mul(const NfElement& a, const NfElement& b) const {
  return reduce(as_theta_poly(a) * as_theta_poly(b));
}
NfElement NumberField::inv(const NfElement& a) const {
  if (is_zero(a)) throw ZeroInput("inverse of zero in the number field");
  return {solve(mult_matrix_power(a), one().coords)};
}
NfElement NumberField::pow(const NfElement& a, long n) const {
  if (n < 0) return pow(inv(a), -n);
  NfElement r = one(), b = a;
  while (n) {
    if (n & 1) r = mul(r, b);
    n >>= 1;
    if (n) b = mul(b, b);
  }
  return r;
}

RatMatrix NumberField::mult_matrix_power(const NfElement& x) const {
  RatMatrix M(n_, n_);
  NfElement col = x;
  const NfElement theta = from_theta_poly(QPoly::x());
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) M(i, j) = col.coords[i];
    col = mul(col, theta);
  }
  return M;
}

RatMatrix NumberField::mult_matrix(const NfElement& x) const { return B_inv_ * mult_matrix_power(x) * B_; }

Rat NumberField::norm(const NfElement& x) const { return det(mult_matrix_power(x)); }
Rat NumberField::trace(const NfElement& x) const { return solhom::trace(mult_matrix_power(x)); }
QPoly NumberField::char_poly(const NfElement& x) const { return QPoly(solhom::char_poly(mult_matrix_power(x))); }
bool NumberField::generates_field(const NfElement& x) const {
  const QPoly cp = char_poly(x);
  return gcd(cp, cp.derivative()).degree() == 0;
}

std::string NumberField::to_string(const NfElement& x) const {
  if (n_ == 1) return solhom::to_string(x.coords[0]);
  if (n_ == 2) {
    // x = u + v theta, theta = (s sqrt(D0) - b) / 2
    const Rat b = f_.coeff(1);
    const Rat a = x.coords[0] - x.coords[1] * b / 2;
    const Rat r = x.coords[1] * Rat(d0_scale_) / 2;
    const Int den = lcm(a.get_den(), r.get_den());
    const Int A = a.get_num() * (den / a.get_den()), R = r.get_num() * (den / r.get_den());
    const std::string root = "sqrt(" + solhom::to_string(*d0_) + ")";
    std::string body;
    if (A != 0) body = solhom::to_string(A);
    if (R != 0) {
      const Int mag = abs(R);
      std::string term = (mag == 1 ? "" : solhom::to_string(mag) + "*") + root;
      if (body.empty())
        body = (R < 0 ? "-" : "") + term;
      else
        body += (R < 0 ? " - " : " + ") + term;
    }
    if (body.empty()) body = "0";
    if (den == 1) return body;
    const bool compound = A != 0 && R != 0;
    return (compound ? "(" + body + ")" : body) + "/" + solhom::to_string(den);
  }
  return as_theta_poly(x).scale_variable(scale_).to_string(var_);
}

PrimeIdeal NumberField::make_prime(const Int& p, const QPoly& g, unsigned e) const {
  PrimeIdeal P;
  P.p = p;
  P.e = e;
  P.f_res = static_cast<unsigned>(g.degree());
  P.g = g;
  NfElement pi = zero();
  for (int i = g.degree(); i >= 0; --i) pi = add(mul(pi, alpha_), from_rational(g.coeffs()[i]));
  P.pi = pi;
  const IntMatrix Mpi = to_int(mult_matrix(pi), "prime generator multiplication matrix");
  IntMatrix gens(n_, 2 * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    gens(i, i) = p;
    for (std::size_t j = 0; j < n_; ++j) gens(i, n_ + j) = Mpi(i, j);
  }
  P.basis = column_lattice(gens);
  if (P.basis.cols() != n_) throw InternalCheckFailure("prime ideal lattice is not of full rank");
  const auto ker = kernel_mod_p(Mpi, p);
  if (ker.empty()) throw InternalCheckFailure("prime generator is a unit modulo p");
  P.beta = ker.front();
  const bool pi_in_pO = [&] {
    for (const auto& c : integral_coords(pi))
      if (!mpz_divisible_p(c.get_num_mpz_t(), p.get_mpz_t())) return false;
    return true;
  }();
  P.label = pi_in_pO ? "(" + solhom::to_string(p) + ")" : "(" + solhom::to_string(p) + ", " + to_string(pi) + ")";
  return P;
}

std::vector<std::pair<PrimeIdeal, unsigned>> NumberField::factor_rational_prime(const Int& p) const {
  if (!is_prime(p)) throw NotPrime(solhom::to_string(p) + " is not prime");
  if (std::find(obstructions_.begin(), obstructions_.end(), p) != obstructions_.end())
    throw IndexObstruction("p = " + solhom::to_string(p) + " divides the index of Z[theta] in the ring of integers");
  std::vector<std::pair<PrimeIdeal, unsigned>> out;
  for (const auto& fac : factor_mod_p(alpha_poly_.int_coeffs(), small_prime(p))) {
    auto P = make_prime(p, from_fp(fac.poly, p, true), fac.multiplicity);
    out.emplace_back(std::move(P), fac.multiplicity);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  unsigned total = 0;
  for (const auto& [P, e] : out) total += P.e * P.f_res;
  if (total != n_) throw InternalCheckFailure("sum of e * f over primes above p differs from the degree");
  return out;
}

long NumberField::valuation(const NfElement& x, const PrimeIdeal& P) const {
  if (is_zero(x)) throw ZeroInput("valuation of zero");
  const RatVector c = integral_coords(x);
  Int m = 1;
  for (const auto& r : c) m = lcm(m, r.get_den());
  IntVector y(n_);
  for (std::size_t i = 0; i < n_; ++i) y[i] = c[i].get_num() * (m / c[i].get_den());
  long v = -static_cast<long>(P.e) * static_cast<long>(solhom::valuation(m, P.p));
  const RatVector beta_r(P.beta.begin(), P.beta.end());
  const IntMatrix Mbeta = to_int(mult_matrix(from_integral_coords(beta_r)), "valuation helper");
  for (;;) {
    IntVector z = Mbeta.apply(y);
    for (const auto& t : z)
      if (!mpz_divisible_p(t.get_mpz_t(), P.p.get_mpz_t())) return v;
    for (auto& t : z) mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), P.p.get_mpz_t());
    y = std::move(z);
    ++v;
  }
}

std::vector<std::pair<PrimeIdeal, long>> NumberField::factor_element(const NfElement& x) const {
  if (is_zero(x)) throw ZeroInput("factorization of zero");
  const RatVector c = integral_coords(x);
  Int m = 1;
  for (const auto& r : c) m = lcm(m, r.get_den());
  const NfElement y = mul(x, from_rational(Rat(m)));
  const Rat ny = norm(y);
  std::set<Int> primes;
  for (const auto& [p, e] : factor(ny.get_num())) primes.insert(p);
  for (const auto& [p, e] : factor(m)) primes.insert(p);
  std::vector<std::pair<PrimeIdeal, long>> out;
  for (const auto& p : primes)
    for (const auto& [P, e] : factor_rational_prime(p)) {
      const long v = valuation(x, P);
      if (v != 0) out.emplace_back(P, v);
    }
  return out;
}

// ---------------------------------------------------------------------------

void FractionalIdeal::canonicalize() {
  Int g = den_;
  for (const auto& x : H_.entries()) g = gcd(g, x);
  if (g > 1) {
    den_ /= g;
    for (std::size_t i = 0; i < H_.rows(); ++i)
      for (std::size_t j = 0; j < H_.cols(); ++j) H_(i, j) /= g;
  }
}

FractionalIdeal FractionalIdeal::from_module_generators(const std::vector<RatVector>& gens) {
  if (gens.empty()) throw ZeroInput("ideal with no generators");
  const std::size_t n = gens.front().size();
  Int den = 1;
  for (const auto& v : gens)
    for (const auto& r : v) den = lcm(den, r.get_den());
  IntMatrix M(n, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) M(i, j) = gens[j][i].get_num() * (den / gens[j][i].get_den());
  FractionalIdeal I;
  I.den_ = den;
  I.H_ = column_lattice(M);
  if (I.H_.cols() != n) throw ZeroInput("ideal generators do not span a full-rank lattice");
  I.canonicalize();
  return I;
}

FractionalIdeal FractionalIdeal::unit(const NumberField& K) {
  FractionalIdeal I;
  I.H_ = IntMatrix::identity(K.degree());
  return I;
}

FractionalIdeal FractionalIdeal::principal(const NumberField& K, const NfElement& x) {
  if (K.is_zero(x)) throw ZeroInput("principal ideal of zero");
  const RatMatrix M = K.mult_matrix(x);
  std::vector<RatVector> gens;
  for (std::size_t j = 0; j < M.cols(); ++j) gens.push_back(M.col(j));
  return from_module_generators(gens);
}

FractionalIdeal FractionalIdeal::from_prime(const PrimeIdeal& P) {
  FractionalIdeal I;
  I.H_ = P.basis;
  return I;
}

RatMatrix FractionalIdeal::basis() const { return make_rat(1, den_) * to_rat(H_); }

FractionalIdeal FractionalIdeal::multiply(const NumberField& K, const FractionalIdeal& other) const {
  const RatMatrix A = basis(), B = other.basis();
  std::vector<RatVector> gens;
  for (std::size_t i = 0; i < A.cols(); ++i) {
    const RatMatrix Ma = K.mult_matrix(K.from_integral_coords(A.col(i)));
    for (std::size_t j = 0; j < B.cols(); ++j) gens.push_back(Ma.apply(B.col(j)));
  }
  return from_module_generators(gens);
}

FractionalIdeal FractionalIdeal::inverse(const NumberField& K) const {
  // L^{-1} = { x : x * l_j in O for every basis vector l_j }, read off the SNF
  // of the stacked multiplication matrices.
  const std::size_t n = H_.rows();
  IntMatrix A(n * H_.cols(), n);
  for (std::size_t j = 0; j < H_.cols(); ++j) {
    const RatVector lj = to_rat(H_).col(j);
    const IntMatrix M = to_int(K.mult_matrix(K.from_integral_coords(lj)), "ideal multiplication matrix");
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) A(j * n + r, c) = M(r, c);
  }
  const auto f = snf(A);
  std::vector<RatVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    if (f.S(i, i) == 0) throw InternalCheckFailure("degenerate ideal in inversion");
    RatVector v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = Rat(f.V(r, i) * den_) / Rat(f.S(i, i));
    gens.push_back(std::move(v));
  }
  return from_module_generators(gens);
}

FractionalIdeal FractionalIdeal::power(const NumberField& K, long k) const {
  if (k < 0) return inverse(K).power(K, -k);
  FractionalIdeal r = unit(K), b = *this;
  while (k) {
    if (k & 1) r = r.multiply(K, b);
    k >>= 1;
    if (k) b = b.multiply(K, b);
  }
  return r;
}

bool FractionalIdeal::contains(const RatVector& v) const {
  // H is square lower triangular: forward substitution.
  const std::size_t n = H_.rows();
  RatVector w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = v[i] * Rat(den_);
  RatVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat s = w[i];
    for (std::size_t j = 0; j < i; ++j) s -= Rat(H_(i, j)) * y[j];
    y[i] = s / Rat(H_(i, i));
    if (y[i].get_den() != 1) return false;
  }
  return true;
}

bool FractionalIdeal::contains(const FractionalIdeal& other) const {
  const RatMatrix B = other.basis();
  for (std::size_t j = 0; j < B.cols(); ++j)
    if (!contains(B.col(j))) return false;
  return true;
}

bool FractionalIdeal::is_integral() const { return den_ == 1; }

Rat FractionalIdeal::norm() const {
  return make_rat(abs(det(H_)), ipow(den_, H_.rows()));
}

std::string FractionalIdeal::to_string() const {
  const std::string body = solhom::to_string(H_);
  return den_ == 1 ? body : "1/" + solhom::to_string(den_) + " * " + body;
}

Int ideal_index(const FractionalIdeal& I, const FractionalIdeal& J) {
  if (!I.contains(J)) throw NotContained("second ideal is not contained in the first");
  const Rat idx = abs(det(inverse(I.basis()) * J.basis()));
  if (idx.get_den() != 1) throw InternalCheckFailure("non-integral lattice index");
  return idx.get_num();
}

std::optional<NfElement> find_generator(const NumberField& K, const FractionalIdeal& I, unsigned bound) {
  const std::size_t n = K.degree();
  const IntMatrix& H = I.hnf_basis();
  const Int target = abs(det(H));
  std::vector<IntMatrix> mats;
  for (std::size_t j = 0; j < n; ++j)
    mats.push_back(to_int(K.mult_matrix(K.from_integral_coords(to_rat(H).col(j))), "ideal basis multiplication"));
  auto value = [](unsigned t) -> long { return (t % 2) ? static_cast<long>((t + 1) / 2) : -static_cast<long>(t / 2); };
  for (unsigned r = 1; r <= bound; ++r) {
    std::vector<unsigned> idx(n, 0);
    for (;;) {
      long mx = 0;
      for (auto t : idx) mx = std::max(mx, std::labs(value(t)));
      if (mx == static_cast<long>(r)) {
        IntMatrix M(n, n);
        for (std::size_t j = 0; j < n; ++j) {
          const long vj = value(idx[j]);
          if (vj == 0) continue;
          M = M + Int(vj) * mats[j];
        }
        if (abs(det(M)) == target) {
          RatVector coords(n);
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) coords[i] += Rat(H(i, j) * value(idx[j]));
          for (auto& c : coords) c /= Rat(I.denominator());
          return K.from_integral_coords(coords);
        }
      }
      std::size_t k = 0;
      while (k < n && ++idx[k] > 2 * r) idx[k++] = 0;
      if (k == n) break;
    }
  }
  return std::nullopt;
}

}  // namespace solhom
