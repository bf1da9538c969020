#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "solhom/colimit.hpp"
#include "solhom/errors.hpp"

using namespace solhom;

namespace {

ColimitGroup scalar(long t) { return ColimitGroup::from_integer_endo(IntMatrix{{t}}); }

// Brute force: smallest n <= cap with T^n x in L, or -1.
long brute_witness(const RatVector& x, const ColimitGroup& G, long cap) {
  RatVector y = G.lattice_coords(x);
  const RatMatrix A = to_rat(G.endo_in_basis());
  for (long n = 0; n <= cap; ++n) {
    if (is_integral(y)) return n;
    y = A.apply(y);
  }
  return -1;
}

}  // namespace

TEST_CASE("membership examples") {
  auto m = membership({Rat(1, 8)}, scalar(2));
  CHECK(m.member);
  CHECK(m.witness == 3);
  CHECK_FALSE(membership({Rat(1, 3)}, scalar(2)).member);
  m = membership({Rat(5)}, scalar(2));
  CHECK(m.member);
  CHECK(m.witness == 0);
  CHECK_THROWS_AS(membership({Rat(1), Rat(2)}, scalar(2)), DimensionMismatch);
  // a cap below the proven bound is reported rather than answered
  m = membership({Rat(1, 8)}, scalar(2), 0.0);
  CHECK(m.cap_hit);
  CHECK_FALSE(m.member);
}

TEST_CASE("membership for Z with multiplication by m") {
  for (long mval : {2, 3, 6, 12, 10}) {
    const auto G = scalar(mval);
    for (long b = 1; b <= 60; ++b) {
      bool expected = true;
      for (const auto& [p, e] : factor(Int(b)))
        if (mval % p.get_si() != 0) expected = false;
      CHECK(membership({make_rat(1, b)}, G).member == expected);
    }
  }
}

TEST_CASE("membership bound against brute force") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> e(-6, 6), den(1, 36);
  int tested = 0;
  while (tested < 300) {
    const auto A = oracle::random_int_matrix(rng, 2, 2, -6, 6);
    if (det(A) == 0) continue;
    const auto L = oracle::random_int_matrix(rng, 2, 2, -3, 3);
    if (det(L) == 0) continue;
    // endo preserving L: T = L A L^{-1}
    const RatMatrix T = to_rat(L) * to_rat(A) * inverse(to_rat(L));
    const ColimitGroup G(to_rat(L), T);
    const RatVector x{make_rat(e(rng), den(rng)), make_rat(e(rng), den(rng))};
    const auto res = membership(x, G);
    const long w = brute_witness(x, G, 1000);
    REQUIRE(res.member == (w >= 0));
    if (res.member) {
      REQUIRE(static_cast<long>(res.witness) == w);
      REQUIRE(res.witness <= res.bound);
    }
    ++tested;
  }
}

TEST_CASE("monotone witnesses") {
  const auto G = ColimitGroup::from_integer_endo(IntMatrix{{2, 1}, {0, 3}});
  const RatMatrix Tinv = inverse(G.endo());
  const RatVector x = (Tinv * Tinv * Tinv).apply({Rat(1), Rat(-1)});
  const auto m = membership(x, G);
  REQUIRE(m.member);
  RatVector y = x;
  const RatMatrix T = G.endo();
  for (unsigned long n = 0; n < m.witness + 5; ++n) {
    CHECK(is_integral(y) == (n >= m.witness));
    y = T.apply(y);
  }
}

TEST_CASE("signatures") {
  auto s = signature(scalar(3));
  CHECK(s.q_rank == 1);
  CHECK(s.mod_p_dims.at(3) == 0);
  CHECK(mod_p_dimension(scalar(3), 2) == 1);

  const ColimitGroup klein1 = ColimitGroup::from_integer_endo(IntMatrix{{3}}, TorsionSystem{FgAbGroup(0, {2}), IntMatrix{{1}}});
  s = signature(klein1);
  CHECK(s.q_rank == 1);
  CHECK(s.torsion_colimit == FgAbGroup(0, {2}));
  CHECK(mod_p_dimension(klein1, 2) == 2);

  s = signature(scalar(1));
  CHECK(s.mod_p_dims.empty());
  CHECK(s.torsion_colimit.is_trivial());
  for (int p : {2, 3, 5}) CHECK(mod_p_dimension(scalar(1), p) == 1);

  // nilpotent torsion endomorphisms die in the colimit
  const auto dead = ColimitGroup::from_integer_endo(IntMatrix{{1}}, TorsionSystem{FgAbGroup(0, {4}), IntMatrix{{2}}});
  CHECK(dead.torsion_colimit().is_trivial());
  const auto partial = ColimitGroup::from_integer_endo(IntMatrix{{1}}, TorsionSystem{FgAbGroup(0, {2, 6}), IntMatrix{{1, 0}, {0, 3}}});
  CHECK(partial.torsion_colimit() == FgAbGroup(0, {2, 2}));
}

TEST_CASE("signature invariant under change of lattice basis") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 40; ++t) {
    const auto A = oracle::random_int_matrix(rng, 3, 3, -4, 4);
    if (det(A) == 0) continue;
    IntMatrix U = IntMatrix::identity(3);
    for (int k = 0; k < 4; ++k) {
      IntMatrix E = IntMatrix::identity(3);
      E(k % 3, (k + 1) % 3) = std::uniform_int_distribution<int>(-3, 3)(rng);
      U = U * E;
    }
    const ColimitGroup G = ColimitGroup::from_integer_endo(A);
    const ColimitGroup H(to_rat(U), to_rat(U) * to_rat(A) * inverse(to_rat(U)));
    CHECK(signature(G) == signature(H));
    CHECK(equal_commuting(H, ColimitGroup(to_rat(U), H.endo())));
  }
}

TEST_CASE("canonical names") {
  CHECK(canonical_form_rank1(scalar(3)).to_string() == "Z[1/3]");
  CHECK(canonical_form_rank1(scalar(4)).to_string() == "Z[1/2]");
  CHECK(canonical_form_rank1(scalar(1)).to_string() == "Z");
  CHECK(canonical_form_rank1(scalar(-6)).to_string() == "Z[1/6]");
  CHECK_THROWS_AS(canonical_form_rank1(ColimitGroup::from_integer_endo(IntMatrix::identity(2))), OutOfRange);

  auto n = certified_name(ColimitGroup::from_integer_endo(IntMatrix{{3, 0}, {0, 2}}));
  REQUIRE(n.form);
  CHECK(n.form->to_string() == "Z[1/2] + Z[1/3]");
  CHECK(n.provenance == NameProvenance::DiagonalEndo);
  n = certified_name(ColimitGroup::from_integer_endo(IntMatrix{{2, 1}, {1, 1}}));
  REQUIRE(n.form);
  CHECK(n.form->to_string() == "Z^2");
  n = certified_name(ColimitGroup::from_integer_endo(IntMatrix{{1, 1}, {-2, 1}}));
  CHECK_FALSE(n.form);
}

TEST_CASE("equality of commuting colimits") {
  CHECK(equal_commuting(scalar(2), scalar(4)));
  CHECK_FALSE(equal_commuting(scalar(2), scalar(3)));
  CHECK(equal_commuting(scalar(6), ColimitGroup({{Rat(4)}}, {{Rat(12)}})));
  CHECK_FALSE(equal_commuting(scalar(6), ColimitGroup({{Rat(5)}}, {{Rat(12)}})));
  CHECK_THROWS_AS(equal_commuting(ColimitGroup::from_integer_endo(IntMatrix{{1, 1}, {0, 1}}),
                                  ColimitGroup::from_integer_endo(IntMatrix{{1, 0}, {1, 1}})),
                  NonCommuting);

  // reflexive, symmetric, and consistent with rank-1 names
  std::vector<ColimitGroup> gs{scalar(2), scalar(4), scalar(3), scalar(6), scalar(12), scalar(1), scalar(-2)};
  for (const auto& a : gs)
    for (const auto& b : gs) {
      const bool eq = equal_commuting(a, b);
      CHECK(eq == equal_commuting(b, a));
      CHECK(eq == (canonical_form_rank1(a) == canonical_form_rank1(b)));
      if (eq) CHECK(signatures_agree(a, b));
    }
}

TEST_CASE("constructor checks") {
  CHECK_THROWS_AS(ColimitGroup({{Rat(1)}}, {{Rat(1, 2)}}), FlatteningFailure);
  CHECK_THROWS_AS(ColimitGroup({{Rat(1)}}, {{Rat(0)}}), OutOfRange);
  CHECK_NOTHROW(ColimitGroup(RatMatrix(0, 0), RatMatrix(0, 0)));
}
