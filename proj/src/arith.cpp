#include "solhom/arith.hpp"

#include <algorithm>
#include <cctype>

#include "solhom/errors.hpp"

namespace solhom {

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int ipow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rat rpow(const Rat& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw OutOfRange("negative power of zero");
    return rpow(Rat(1) / base, -exp);
  }
  const auto e = static_cast<unsigned long>(exp);
  return make_rat(ipow(base.get_num(), e), ipow(base.get_den(), e));
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

// Pollard-Brent; n odd composite, not a perfect power of a small prime.
Int pollard_brent(const Int& n, unsigned long seed) {
  Int y = seed % n, c = (seed * 7 + 1) % n, m = 64;
  Int g = 1, r = 1, q = 1, x, ys;
  auto f = [&](const Int& v) {
    Int t = v * v + c;
    return Int(t % n);
  };
  while (g == 1) {
    x = y;
    for (Int i = 0; i < r; ++i) y = f(y);
    Int k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (Int i = 0; i < m && i < r - k; ++i) {
        y = f(y);
        Int diff = x - y;
        q = (q * abs(diff)) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g;
}

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Int s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    std::map<Int, unsigned> sub;
    factor_into(s, sub);
    for (auto& [p, e] : sub) out[p] += 2 * e;
    return;
  }
  for (unsigned long seed = 2;; ++seed) {
    Int d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

}  // namespace

std::map<Int, unsigned> factor(const Int& n) {
  if (n == 0) throw OutOfRange("factor(0)");
  std::map<Int, unsigned> out;
  Int m = abs(n);
  for (unsigned long p = 2; p < 10000 && m > 1; p += (p == 2 ? 1 : 2)) {
    if (Int(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++out[Int(p)];
      m /= p;
    }
  }
  factor_into(m, out);
  return out;
}

Int radical(const Int& n) {
  Int r = 1;
  for (const auto& [p, e] : factor(n)) r *= p;
  return r;
}

unsigned big_omega(const Int& n) {
  unsigned total = 0;
  for (const auto& [p, e] : factor(n)) total += e;
  return total;
}

unsigned valuation(const Int& n, const Int& p) {
  if (n == 0) throw OutOfRange("valuation of zero");
  unsigned v = 0;
  Int m = n;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

long valuation(const Rat& r, const Int& p) {
  if (r == 0) throw OutOfRange("valuation of zero");
  return static_cast<long>(valuation(r.get_num(), p)) - static_cast<long>(valuation(r.get_den(), p));
}

Int strip_primes(Int q, const Int& m) {
  for (const auto& [p, e] : factor(m)) {
    while (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) q /= p;
  }
  return q;
}

Rat parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty rational", 0);
  auto check_int = [&](const std::string& part, std::size_t offset) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw ParseError("expected digits", offset + i);
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw ParseError(std::string("unexpected character '") + part[i] + "'", offset + i);
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  check_int(num, 0);
  if (num[0] == '+') num.erase(0, 1);
  Int n(num);
  Int d = 1;
  if (slash != std::string::npos) {
    std::string den = s.substr(slash + 1);
    check_int(den, slash + 1);
    if (den[0] == '+') den.erase(0, 1);
    d = Int(den);
    if (d == 0) throw ParseError("zero denominator", slash + 1);
  }
  return make_rat(n, d);
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace solhom
