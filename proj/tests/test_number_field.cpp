#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "solhom/errors.hpp"
#include "solhom/number_field.hpp"

using namespace solhom;

namespace {

NumberField sqrt_minus_5() { return NumberField(parse_polynomial("x^2 + 5")); }

FractionalIdeal ideal_from(const NumberField& K, std::initializer_list<const char*> gens) {
  std::vector<RatVector> v;
  for (const char* g : gens) {
    const auto x = K.from_theta_poly(parse_polynomial(g));
    const auto M = K.mult_matrix(x);
    for (std::size_t j = 0; j < M.cols(); ++j) v.push_back(M.col(j));
  }
  return FractionalIdeal::from_module_generators(v);
}

}  // namespace

TEST_CASE("quadratic integral bases") {
  const auto K = sqrt_minus_5();
  CHECK(K.quadratic_radicand() == Int(-5));
  CHECK(K.order_discriminant() == -20);
  const NumberField G(parse_polynomial("x^2 - x - 1"));
  CHECK(G.order_discriminant() == 5);
  // x^2 - 45 defines Q(sqrt 5); the maximal order has discriminant 5
  const NumberField H(parse_polynomial("x^2 - 45"));
  CHECK(H.quadratic_radicand() == Int(5));
  CHECK(H.order_discriminant() == 5);
  CHECK(H.is_algebraic_integer(H.from_theta_poly(parse_polynomial("(x + 3)/6"))));
  CHECK_FALSE(H.is_algebraic_integer(H.from_theta_poly(parse_polynomial("x/6"))));
}

TEST_CASE("element arithmetic and norms") {
  const auto K = sqrt_minus_5();
  const auto a = K.from_theta_poly(parse_polynomial("1 + x"));
  CHECK(K.norm(a) == 6);
  CHECK(K.norm(K.one()) == 1);
  CHECK(K.mul(a, K.inv(a)) == K.one());
  CHECK(K.to_string(a) == "1 + sqrt(-5)");
  CHECK(K.to_string(K.from_theta_poly(parse_polynomial("(1 - x)/2"))) == "(1 - sqrt(-5))/2");
  const NumberField G(parse_polynomial("x^2 - x - 1"));
  CHECK(G.norm(G.from_theta_poly(QPoly::x())) == -1);
  CHECK(G.to_string(G.from_theta_poly(QPoly::x())) == "(1 + sqrt(5))/2");

  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coef(-7, 7);
  for (const char* fs : {"x^2 + 5", "x^3 - 2", "x^2 - x - 1"}) {
    const NumberField F(parse_polynomial(fs));
    for (int t = 0; t < 20; ++t) {
      std::vector<Rat> c(F.degree());
      for (auto& x : c) x = make_rat(coef(rng), 1 + std::abs(coef(rng)));
      const QPoly p(c);
      if (p.is_zero()) continue;
      const Rat ref = oracle::sylvester_resultant(F.min_poly().coeffs(), p.coeffs());
      CHECK(F.norm(F.from_theta_poly(p)) == ref);
    }
  }
}

TEST_CASE("rational scaling of the defining polynomial") {
  // theta = 2x for x a root of x^2 - x + 3/2; theta^2 - 2 theta + 6 = 0
  const NumberField K(parse_polynomial("x^2 - 2x + 6"), Rat(2));
  CHECK(K.quadratic_radicand() == Int(-5));
  const auto c = K.from_user_poly(QPoly::x());
  CHECK(K.to_string(c) == "(1 + sqrt(-5))/2");
  CHECK(K.norm(c) == Rat(3, 2));
}

TEST_CASE("prime factorization in Q(sqrt(-5))") {
  const auto K = sqrt_minus_5();
  const auto two = K.factor_rational_prime(2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].first.e == 2);
  CHECK(two[0].first.f_res == 1);
  CHECK(FractionalIdeal::from_prime(two[0].first) == ideal_from(K, {"2", "1 + x"}));
  CHECK(two[0].first.label == "(2, 1 + sqrt(-5))");

  const auto three = K.factor_rational_prime(3);
  REQUIRE(three.size() == 2);
  const auto p2 = ideal_from(K, {"3", "1 + x"}), p3 = ideal_from(K, {"3", "1 - x"});
  for (const auto& [P, e] : three) {
    CHECK(e == 1);
    CHECK(P.f_res == 1);
    const auto I = FractionalIdeal::from_prime(P);
    CHECK((I == p2 || I == p3));
  }
  CHECK_FALSE(p2 == p3);
  CHECK(p2.multiply(K, p3) == FractionalIdeal::principal(K, K.from_rational(3)));

  const auto seven = K.factor_rational_prime(7);  // -5 = 2 = 3^2 mod 7: split
  CHECK(seven.size() == 2);
  const auto eleven = K.factor_rational_prime(11);  // -5 is a non-residue mod 11: inert
  REQUIRE(eleven.size() == 1);
  CHECK(eleven[0].first.f_res == 2);
  CHECK_THROWS_AS(K.factor_rational_prime(4), NotPrime);
}

TEST_CASE("rational field") {
  const auto Q = NumberField::rationals();
  const auto f = Q.factor_rational_prime(5);
  REQUIRE(f.size() == 1);
  CHECK(f[0].first.e == 1);
  CHECK(f[0].first.label == "(5)");
  const auto two = Q.factor_rational_prime(2)[0].first;
  CHECK(Q.valuation(Q.from_rational(Rat(3, 4)), two) == -2);
  CHECK(ideal_index(FractionalIdeal::unit(Q), FractionalIdeal::principal(Q, Q.from_rational(7))) == 7);
}

TEST_CASE("valuations") {
  const auto K = sqrt_minus_5();
  const auto p1 = K.factor_rational_prime(2)[0].first;
  CHECK(K.valuation(K.from_rational(2), p1) == 2);
  for (int p : {2, 3, 5, 7})
    for (const auto& [P, e] : K.factor_rational_prime(p)) CHECK(K.valuation(K.one(), P) == 0);
  CHECK_THROWS_AS(K.valuation(K.zero(), p1), ZeroInput);

  const auto c = K.from_theta_poly(parse_polynomial("(1 + x)/2"));
  CHECK(K.valuation(c, p1) == -1);
  const auto p2 = ideal_from(K, {"3", "1 + x"});
  for (const auto& [P, e] : K.factor_rational_prime(3)) {
    const long v = K.valuation(c, P);
    CHECK(v == (FractionalIdeal::from_prime(P) == p2 ? 1 : 0));
  }
}

TEST_CASE("valuation additivity and norm product") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> coef(-12, 12);
  const auto K = sqrt_minus_5();
  std::vector<PrimeIdeal> primes;
  for (int p : {2, 3, 5, 7, 11, 13})
    for (const auto& [P, e] : K.factor_rational_prime(p)) primes.push_back(P);
  for (int t = 0; t < 40; ++t) {
    const auto x = K.from_theta_poly(QPoly({Rat(coef(rng)), Rat(coef(rng))}));
    const auto y = K.from_theta_poly(QPoly({Rat(coef(rng)), Rat(coef(rng))}));
    if (K.is_zero(x) || K.is_zero(y)) continue;
    for (const auto& P : primes) REQUIRE(K.valuation(K.mul(x, y), P) == K.valuation(x, P) + K.valuation(y, P));
    Rat prod = 1;
    for (const auto& [P, v] : K.factor_element(x)) prod *= rpow(Rat(P.norm()), v);
    REQUIRE(prod == abs(K.norm(x)));
  }
}

TEST_CASE("fractional ideals") {
  const auto K = sqrt_minus_5();
  const auto p1 = FractionalIdeal::from_prime(K.factor_rational_prime(2)[0].first);
  const auto O = FractionalIdeal::unit(K);
  CHECK(p1.multiply(K, p1.inverse(K)) == O);
  CHECK(p1.power(K, 2) == FractionalIdeal::principal(K, K.from_rational(2)));
  CHECK(p1.power(K, -1).norm() == Rat(1, 2));
  CHECK(ideal_index(O, p1) == 2);
  CHECK(ideal_index(O, O) == 1);
  CHECK(ideal_index(O, ideal_from(K, {"3", "1 + x"})) == 3);
  CHECK_THROWS_AS(ideal_index(p1, O), NotContained);
  const auto H = hnf(p1.hnf_basis());
  CHECK(H.H == p1.hnf_basis());

  const auto gen = find_generator(K, p1.power(K, 2), 20);
  REQUIRE(gen.has_value());
  CHECK(abs(K.norm(*gen)) == 4);
  CHECK_FALSE(find_generator(K, p1, 20).has_value());
  const auto g2 = find_generator(K, p1.power(K, -2), 20);
  REQUIRE(g2.has_value());
  CHECK(FractionalIdeal::principal(K, *g2) == p1.power(K, -2));
}

TEST_CASE("higher degree fields") {
  const NumberField K(parse_polynomial("x^3 - 2"));
  CHECK(K.poly_discriminant() == -108);
  CHECK(K.index_obstructions().empty());
  const auto two = K.factor_rational_prime(2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].first.e == 3);
  const auto five = K.factor_rational_prime(5);
  REQUIRE(five.size() == 2);
  CHECK(five[0].first.f_res + five[1].first.f_res == 3);
  CHECK(K.valuation(K.from_rational(2), two[0].first) == 3);

  const NumberField bad(parse_polynomial("x^3 - 4"));
  CHECK(bad.index_obstructions() == std::vector<Int>{2});
  CHECK_THROWS_AS(bad.factor_rational_prime(2), IndexObstruction);
  CHECK(bad.factor_rational_prime(5).size() >= 1);
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(parse_polynomial("x^2 + 5")));
  CHECK_FALSE(is_irreducible(parse_polynomial("x^2 - 4")));
  CHECK_FALSE(is_irreducible(parse_polynomial("x^3 - x")));
  CHECK(is_irreducible(parse_polynomial("x^3 - 2")));
  CHECK(is_irreducible(parse_polynomial("x^2 - x + 3/2")));
  CHECK(is_irreducible(parse_polynomial("x^5 - x - 1")));
  CHECK_FALSE(is_irreducible(parse_polynomial("(x^2+1)^2")));
  // Reducible modulo every prime: the sieve cannot certify it.
  CHECK_THROWS_AS(is_irreducible(parse_polynomial("x^4 + 1")), Unsupported);
}

TEST_CASE("discriminant against resultant") {
  for (const char* fs : {"x^2 + 5", "x^3 - 2", "x^3 + x + 1", "x^4 - x - 1"}) {
    const auto f = parse_polynomial(fs);
    const Rat res = oracle::sylvester_resultant(f.coeffs(), f.derivative().coeffs());
    const long n = f.degree();
    const Rat expected = ((n * (n - 1) / 2) % 2) ? Rat(-res) : res;
    CHECK(Rat(poly_discriminant(f)) == expected);
  }
}
