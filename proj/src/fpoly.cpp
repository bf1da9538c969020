#include "solhom/fpoly.hpp"

#include <algorithm>
#include <random>

#include "solhom/errors.hpp"

namespace solhom {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 addmod(u64 a, u64 b, u64 p) { return (a + b) % p; }
u64 submod(u64 a, u64 b, u64 p) { return (a + p - b) % p; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) {
  if (a % p == 0) throw OutOfRange("inverse of zero mod p");
  return powmod(a, p - 2, p);
}

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly monic(FpPoly a, u64 p) {
  if (a.empty()) return a;
  const u64 inv = invmod(a.back(), p);
  for (auto& x : a) x = mulmod(x, inv, p);
  return a;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    const u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    c[i] = submod(x, y, p);
  }
  trim(c);
  return c;
}

FpPoly add(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    const u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    c[i] = addmod(x, y, p);
  }
  trim(c);
  return c;
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, u64 p) {
  if (b.empty()) throw OutOfRange("polynomial division by zero mod p");
  FpPoly r = a;
  if (deg(a) < deg(b)) return {{}, r};
  FpPoly q(a.size() - b.size() + 1);
  const u64 inv = invmod(b.back(), p);
  for (int i = deg(r); i >= deg(b); --i) {
    if (r[i] == 0) continue;
    const u64 t = mulmod(r[i], inv, p);
    q[i - deg(b)] = t;
    for (int j = 0; j <= deg(b); ++j) r[i - deg(b) + j] = submod(r[i - deg(b) + j], mulmod(t, b[j], p), p);
  }
  trim(q);
  trim(r);
  return {q, r};
}

FpPoly div(const FpPoly& a, const FpPoly& b, u64 p) { return divmod(a, b, p).first; }

FpPoly derivative(const FpPoly& a, u64 p) {
  FpPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mulmod(a[i], i % p, p));
  trim(d);
  return d;
}

FpPoly mulmod_poly(const FpPoly& a, const FpPoly& b, const FpPoly& m, u64 p) { return fp_mod(fp_mul(a, b, p), m, p); }

FpPoly powmod_poly(FpPoly base, Int e, const FpPoly& m, u64 p) {
  FpPoly r{1};
  r = fp_mod(r, m, p);
  base = fp_mod(base, m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mulmod_poly(r, base, m, p);
    e >>= 1;
    if (e > 0) base = mulmod_poly(base, base, m, p);
  }
  return r;
}

bool is_one(const FpPoly& a) { return a.size() == 1 && a[0] == 1; }

struct SqfPart {
  FpPoly poly;
  unsigned mult;
};

// Squarefree decomposition of a monic polynomial (Yun's algorithm adapted to characteristic p).
std::vector<SqfPart> squarefree_decomposition(const FpPoly& f, u64 p) {
  std::vector<SqfPart> out;
  if (deg(f) <= 0) return out;
  const FpPoly d = derivative(f, p);
  FpPoly c = d.empty() ? f : monic(fp_gcd(f, d, p), p);
  FpPoly w = div(f, c, p);
  unsigned i = 1;
  while (!is_one(w) && !w.empty()) {
    FpPoly y = monic(fp_gcd(w, c, p), p);
    FpPoly z = div(w, y, p);
    if (deg(z) > 0) out.push_back({monic(z, p), i});
    ++i;
    w = y;
    c = div(c, y, p);
  }
  if (deg(c) > 0) {
    // c is a p-th power: take the p-th root coefficientwise.
    FpPoly root;
    for (std::size_t k = 0; k < c.size(); k += p) root.push_back(c[k]);
    for (auto& part : squarefree_decomposition(monic(root, p), p)) out.push_back({part.poly, part.mult * static_cast<unsigned>(p)});
  }
  return out;
}

struct DdfPart {
  FpPoly poly;
  unsigned degree;
};

std::vector<DdfPart> distinct_degree(FpPoly f, u64 p) {
  std::vector<DdfPart> out;
  const FpPoly x{0, 1};
  FpPoly h = fp_mod(x, f, p);
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(deg(f)); ++d) {
    h = powmod_poly(h, Int(static_cast<unsigned long>(p)), f, p);
    FpPoly g = monic(fp_gcd(f, sub(h, x, p), p), p);
    if (!is_one(g)) {
      out.push_back({g, d});
      f = div(f, g, p);
      h = fp_mod(h, f, p);
    }
  }
  if (deg(f) > 0) out.push_back({monic(f, p), static_cast<unsigned>(deg(f))});
  return out;
}

void equal_degree(const FpPoly& f, unsigned d, u64 p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (static_cast<unsigned>(deg(f)) == d) {
    out.push_back(monic(f, p));
    return;
  }
  std::uniform_int_distribution<u64> coef(0, p - 1);
  for (;;) {
    FpPoly a(deg(f));
    for (auto& x : a) x = coef(rng);
    trim(a);
    if (deg(a) <= 0) continue;
    FpPoly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      FpPoly t = a, acc = a;
      for (unsigned i = 1; i < d; ++i) {
        t = mulmod_poly(t, t, f, p);
        acc = add(acc, t, p);
      }
      b = acc;
    } else {
      Int e = (ipow(Int(static_cast<unsigned long>(p)), d) - 1) / 2;
      b = sub(powmod_poly(a, e, f, p), FpPoly{1}, p);
    }
    FpPoly g = monic(fp_gcd(f, b, p), p);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree(g, d, p, rng, out);
      equal_degree(div(f, g, p), d, p, rng, out);
      return;
    }
  }
}

}  // namespace

FpPoly reduce_mod(const std::vector<Int>& coeffs, std::uint64_t p) {
  FpPoly out;
  const Int P(static_cast<unsigned long>(p));
  for (const auto& c : coeffs) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
    out.push_back(r.get_ui());
  }
  trim(out);
  return out;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = addmod(c[i + j], mulmod(a[i], b[j], p), p);
  }
  trim(c);
  return c;
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& b, std::uint64_t p) { return divmod(a, b, p).second; }

FpPoly fp_gcd(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly x = a, y = b;
  while (!y.empty()) {
    FpPoly r = fp_mod(x, y, p);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x, p);
}

std::vector<FpFactor> factor_mod_p(const std::vector<Int>& f, std::uint64_t p) {
  if (p < 2 || p >= (1ULL << 62) || !is_prime(Int(static_cast<unsigned long>(p))))
    throw NotPrime("modulus " + std::to_string(p) + " is not a supported prime");
  FpPoly g = reduce_mod(f, p);
  if (g.empty() || g.size() != f.size()) throw OutOfRange("leading coefficient vanishes mod p");
  g = monic(g, p);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ p);
  std::vector<FpFactor> out;
  for (const auto& part : squarefree_decomposition(g, p)) {
    for (const auto& dd : distinct_degree(part.poly, p)) {
      std::vector<FpPoly> irr;
      equal_degree(dd.poly, dd.degree, p, rng, irr);
      for (auto& q : irr) out.push_back({std::move(q), part.mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
    if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
    return a.poly < b.poly;
  });
  // Merge equal factors that arrived from different squarefree layers.
  std::vector<FpFactor> merged;
  for (auto& fac : out) {
    if (!merged.empty() && merged.back().poly == fac.poly)
      merged.back().multiplicity += fac.multiplicity;
    else
      merged.push_back(std::move(fac));
  }
  return merged;
}

std::vector<unsigned> factor_degrees_mod_p(const std::vector<Int>& f, std::uint64_t p) {
  std::vector<unsigned> out;
  for (const auto& fac : factor_mod_p(f, p))
    for (unsigned i = 0; i < fac.multiplicity; ++i) out.push_back(static_cast<unsigned>(fac.poly.size() - 1));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace solhom
