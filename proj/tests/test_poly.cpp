#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "solhom/errors.hpp"
#include "solhom/fpoly.hpp"
#include "solhom/poly.hpp"

using namespace solhom;

TEST_CASE("parsing") {
  CHECK(parse_polynomial("x^2 - x + 3/2") == QPoly({Rat(3, 2), Rat(-1), Rat(1)}));
  CHECK(parse_polynomial("(1 + x)/2") == QPoly({Rat(1, 2), Rat(1, 2)}));
  CHECK(parse_polynomial("2x^3-(x+1)^2") == QPoly({Rat(-1), Rat(-2), Rat(-1), Rat(2)}));
  CHECK(parse_polynomial("-3") == QPoly::constant(-3));
  CHECK(parse_polynomial(" x * x ") == parse_polynomial("x^2"));
  try {
    parse_polynomial("x^2 + $");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(parse_polynomial("1/x"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("1/0"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x+1"), ParseError);
  CHECK_THROWS_AS(parse_polynomial(""), ParseError);
}

TEST_CASE("arithmetic and gcd") {
  const auto f = parse_polynomial("x^3 - 1"), g = parse_polynomial("x^2 - 1");
  CHECK(gcd(f, g) == parse_polynomial("x - 1"));
  auto [q, r] = divmod(f, g);
  CHECK(q * g + r == f);
  CHECK(squarefree_part(parse_polynomial("(x-1)^3 (x+2)")) == parse_polynomial("(x-1)(x+2)"));
  CHECK(parse_polynomial("x^2+1").to_string() == "x^2 + 1");
  CHECK(parse_polynomial("-x^2/2+3x").to_string() == "-1/2*x^2 + 3*x");
}

TEST_CASE("real roots in interval") {
  CHECK(real_roots_in_interval(parse_polynomial("x^2 - 5"), -1, 1) == 0);
  CHECK(real_roots_in_interval(parse_polynomial("x^2 - x - 1"), -1, 1) == 1);
  CHECK(real_roots_in_interval(parse_polynomial("x^2 + 5"), -10, 10) == 0);
  // Roots at the endpoints are excluded.
  CHECK(real_roots_in_interval(parse_polynomial("(x-1)(x+1)x"), -1, 1) == 1);
  CHECK(real_root_count(parse_polynomial("(x^2-2)^2 (x^2+1)")) == 2);

  const auto f = parse_polynomial("x^2 - x - 1");
  const auto iv = isolate_real_roots(f, Rat(1, 1000));
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].lo < Rat(-618, 1000));
  CHECK(iv[0].hi > Rat(-619, 1000));
}

TEST_CASE("unit disk examples") {
  auto c = roots_in_unit_disk(parse_polynomial("x - 2"));
  CHECK(c.inside == 0);
  CHECK(c.outside == 1);
  c = roots_in_unit_disk(parse_polynomial("x^2 - x - 1"));
  CHECK(c.inside == 1);
  CHECK_THROWS_AS(roots_in_unit_disk(parse_polynomial("x^2 + 1")), BoundaryRoot);
  CHECK_THROWS_AS(roots_in_unit_disk(parse_polynomial("x - 1")), BoundaryRoot);
  CHECK(has_root_on_unit_circle(parse_polynomial("x^2 - x + 1")));
  CHECK_FALSE(has_root_on_unit_circle(parse_polynomial("x^2 - x + 3/2")));
  CHECK(roots_in_unit_disk(parse_polynomial("x")).inside == 1);
  CHECK(roots_in_unit_disk(parse_polynomial("x^2 - x + 3/2")).inside == 0);
  CHECK(roots_in_unit_disk(parse_polynomial("3x^2 + x + 1")).inside == 2);
}

TEST_CASE("unit disk count against numeric roots") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-6, 6), degd(1, 6);
  int checked = 0;
  while (checked < 150) {
    const int n = degd(rng);
    std::vector<Rat> c(n + 1);
    for (auto& x : c) x = coef(rng);
    if (c.back() == 0) continue;
    const QPoly f(c);
    const QPoly g = squarefree_part(f);
    const auto z = oracle::numeric_roots(g.coeffs());
    std::size_t inside = 0;
    bool near_circle = false;
    for (const auto& r : z) {
      const long double m = std::abs(r);
      if (std::fabs(m - 1.0L) < 1e-6L) near_circle = true;
      if (m < 1) ++inside;
    }
    if (near_circle) {
      CHECK(has_root_on_unit_circle(f));
      continue;
    }
    REQUIRE_FALSE(has_root_on_unit_circle(f));
    const auto cnt = roots_in_unit_disk(f);
    REQUIRE(cnt.inside == inside);
    REQUIRE(cnt.inside + cnt.outside == static_cast<std::size_t>(g.degree()));
    std::size_t real = 0;
    for (const auto& r : z)
      if (std::fabs(r.imag()) < 1e-9L) ++real;
    REQUIRE(real_root_count(f) == real);
    ++checked;
  }
}

namespace {

bool fp_irreducible_brute(const FpPoly& f, std::uint64_t p) {
  const int n = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= n; ++d) {
    // enumerate monic polynomials of degree d
    std::vector<std::uint64_t> cur(d, 0);
    for (;;) {
      FpPoly g = cur;
      g.push_back(1);
      if (fp_mod(f, g, p).empty()) return false;
      int i = 0;
      while (i < d && ++cur[i] == p) cur[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("factorization mod p") {
  // x^2 + 5 mod 2 = (x + 1)^2; mod 3 = (x + 1)(x + 2)
  auto f2 = factor_mod_p({5, 0, 1}, 2);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].multiplicity == 2);
  CHECK(factor_degrees_mod_p({5, 0, 1}, 3) == std::vector<unsigned>{1, 1});
  CHECK(factor_degrees_mod_p({5, 0, 1}, 11) == std::vector<unsigned>{2});
  CHECK_THROWS_AS(factor_mod_p({1, 1}, 4), NotPrime);

  std::mt19937_64 rng(23);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int t = 0; t < 40; ++t) {
      const int n = 1 + t % 7;
      std::vector<Int> f(n + 1);
      for (auto& x : f) x = coef(rng);
      f.back() = 1;
      const auto facs = factor_mod_p(f, p);
      FpPoly prod{1};
      for (const auto& fac : facs) {
        REQUIRE(fp_irreducible_brute(fac.poly, p));
        REQUIRE(fac.poly.back() == 1);
        for (unsigned i = 0; i < fac.multiplicity; ++i) prod = fp_mul(prod, fac.poly, p);
      }
      REQUIRE(prod == reduce_mod(f, p));
    }
  }
}
