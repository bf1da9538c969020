#include "solhom/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "solhom/errors.hpp"

namespace solhom {

QPoly::QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

QPoly QPoly::from_ints(const std::vector<Int>& coeffs) {
  std::vector<Rat> c(coeffs.begin(), coeffs.end());
  return QPoly(std::move(c));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat QPoly::operator()(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<unsigned long>(i));
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (is_zero()) return {};
  return (Rat(1) / leading()) * *this;
}

QPoly QPoly::scale_variable(const Rat& s) const {
  std::vector<Rat> out(c_.size());
  Rat p = 1;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    out[i] = c_[i] * p;
    p *= s;
  }
  return QPoly(std::move(out));
}

QPoly QPoly::compose(const QPoly& inner) const {
  QPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + QPoly::constant(*it);
  return acc;
}

bool QPoly::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r.get_den() == 1; });
}

std::vector<Int> QPoly::int_coeffs() const {
  std::vector<Int> out;
  for (const auto& r : c_) {
    if (r.get_den() != 1) throw InternalCheckFailure("polynomial has non-integral coefficients");
    out.push_back(r.get_num());
  }
  return out;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a) { return Rat(-1) * a; }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(c));
}

QPoly operator*(const Rat& s, const QPoly& a) {
  std::vector<Rat> c = a.c_;
  for (auto& x : c) x *= s;
  return QPoly(std::move(c));
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& a = c_[i];
    if (a == 0) continue;
    const bool neg = a < 0;
    const Rat mag = neg ? Rat(-a) : a;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (i == 0 || mag != 1) os << solhom::to_string(mag);
    if (i > 0) {
      if (mag != 1) os << '*';
      os << var;
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw OutOfRange("polynomial division by zero");
  std::vector<Rat> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rat> q(a.degree() - db + 1);
  const Rat lead = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    const Rat t = r[i] / lead;
    q[i - db] = t;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
  }
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }
QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

QPoly pow(const QPoly& a, unsigned n) {
  QPoly r = QPoly::constant(1), b = a;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

QPoly squarefree_part(const QPoly& f) {
  if (f.degree() <= 0) return f.monic();
  return (f / gcd(f, f.derivative())).monic();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, char var) : s_(text), var_(var) {}

  QPoly run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    QPoly p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at(char ch) {
    skip();
    return pos_ < s_.size() && s_[pos_] == ch;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char ch = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == var_ || ch == '(';
  }

  QPoly expr() {
    QPoly acc;
    bool neg = false;
    if (at('+') || at('-')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (at('+')) {
        ++pos_;
        acc = acc + term();
      } else if (at('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  QPoly term() {
    QPoly acc = factor();
    for (;;) {
      if (at('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (at('/')) {
        ++pos_;
        const std::size_t where = pos_;
        QPoly d = factor();
        if (d.degree() != 0) throw ParseError("division by a non-constant or zero", where);
        acc = (Rat(1) / d.leading()) * acc;
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  QPoly factor() {
    QPoly base = atom();
    if (at('^')) {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected a non-negative integer exponent", start);
      if (pos_ - start > 4) throw ParseError("exponent too large", start);
      base = pow(base, static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  QPoly atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      QPoly inner = expr();
      if (!at(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (ch == '-') {
      ++pos_;
      return -factor();
    }
    if (ch == var_) {
      ++pos_;
      return QPoly::x();
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return QPoly::constant(Rat(Int(std::string(s_.substr(start, pos_ - start)))));
    }
    throw ParseError(std::string("unexpected '") + ch + "'", pos_);
  }

  std::string_view s_;
  char var_;
  std::size_t pos_ = 0;
};

}  // namespace

QPoly parse_polynomial(std::string_view text, char var) { return Parser(text, var).run(); }

// ---------------------------------------------------------------------------
// Real roots

namespace {

std::vector<QPoly> sturm_chain(const QPoly& f0, const QPoly& f1) {
  std::vector<QPoly> chain{f0, f1};
  while (!chain.back().is_zero()) {
    QPoly r = -(chain[chain.size() - 2] % chain.back());
    if (r.is_zero()) break;
    chain.push_back(std::move(r));
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

int sign(const Rat& r) { return sgn(r); }

std::size_t variations(const std::vector<int>& signs) {
  std::size_t v = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

std::size_t variations_at(const std::vector<QPoly>& chain, const Rat& x) {
  std::vector<int> s;
  for (const auto& p : chain) s.push_back(sign(p(x)));
  return variations(s);
}

// dir = +1 for +infinity, -1 for -infinity
std::size_t variations_at_infinity(const std::vector<QPoly>& chain, int dir) {
  std::vector<int> s;
  for (const auto& p : chain) {
    int v = sign(p.leading());
    if (dir < 0 && p.degree() % 2) v = -v;
    s.push_back(v);
  }
  return variations(s);
}

// Removes the linear factor (x - a) while a is a root.
QPoly deflate(QPoly g, const Rat& a) {
  const QPoly lin({-a, Rat(1)});
  while (g.degree() > 0 && g(a) == 0) g = g / lin;
  return g;
}

Rat cauchy_bound(const QPoly& f) {
  Rat m = 0;
  for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rat(abs(f.coeffs()[i] / f.leading())));
  return m + 1;
}

}  // namespace

std::size_t real_roots_in_interval(const QPoly& f, const Rat& a, const Rat& b) {
  if (f.is_zero()) throw OutOfRange("root count of the zero polynomial");
  if (!(a < b)) throw OutOfRange("empty interval");
  QPoly g = deflate(deflate(squarefree_part(f), a), b);
  if (g.degree() <= 0) return 0;
  const auto chain = sturm_chain(g, g.derivative());
  return variations_at(chain, a) - variations_at(chain, b);
}

std::size_t real_root_count(const QPoly& f) {
  if (f.is_zero()) throw OutOfRange("root count of the zero polynomial");
  const QPoly g = squarefree_part(f);
  if (g.degree() <= 0) return 0;
  const auto chain = sturm_chain(g, g.derivative());
  return variations_at_infinity(chain, -1) - variations_at_infinity(chain, +1);
}

std::vector<RootInterval> isolate_real_roots(const QPoly& f, const Rat& width) {
  const QPoly g = squarefree_part(f);
  std::vector<RootInterval> out;
  if (g.degree() <= 0) return out;
  const Rat B = cauchy_bound(g);
  struct Job {
    Rat lo, hi;
  };
  std::vector<Job> stack{{-B, B}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    const std::size_t n = real_roots_in_interval(g, j.lo, j.hi);
    if (n == 0) continue;
    if (n == 1 && j.hi - j.lo <= width) {
      out.push_back({j.lo, j.hi, false});
      continue;
    }
    const Rat mid = (j.lo + j.hi) / 2;
    if (g(mid) == 0) out.push_back({mid, mid, true});
    stack.push_back({j.lo, mid});
    stack.push_back({mid, j.hi});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

long cauchy_index(const QPoly& p, const QPoly& q) {
  if (q.is_zero()) throw OutOfRange("Cauchy index with zero denominator");
  const QPoly r = p % q;
  if (r.is_zero()) return 0;
  const auto chain = sturm_chain(q, r);
  return static_cast<long>(variations_at_infinity(chain, -1)) - static_cast<long>(variations_at_infinity(chain, +1));
}

namespace {

struct CayleyData {
  QPoly g;     // squarefree part
  QPoly A, B;  // h(iy) = A(y) + i B(y)
  bool boundary = false;
};

// Cayley transform z = (1 + w) / (1 - w) maps |z| < 1 onto Re w < 0.
CayleyData cayley(const QPoly& f) {
  CayleyData d;
  d.g = squarefree_part(f);
  const int n = d.g.degree();
  if (n <= 0) return d;
  if (d.g(Rat(1)) == 0 || d.g(Rat(-1)) == 0) {
    d.boundary = true;
    return d;
  }
  const QPoly one_plus({Rat(1), Rat(1)}), one_minus({Rat(1), Rat(-1)});
  QPoly h;
  for (int k = 0; k <= n; ++k) {
    const Rat& gk = d.g.coeffs()[k];
    if (gk == 0) continue;
    h = h + gk * (pow(one_plus, k) * pow(one_minus, n - k));
  }
  std::vector<Rat> a(n + 1), b(n + 1);
  for (int k = 0; k <= h.degree(); ++k) {
    const Rat& hk = h.coeffs()[k];
    if (k % 2 == 0)
      a[k] = (k / 2) % 2 ? Rat(-hk) : hk;
    else
      b[k] = ((k - 1) / 2) % 2 ? Rat(-hk) : hk;
  }
  d.A = QPoly(std::move(a));
  d.B = QPoly(std::move(b));
  const QPoly common = gcd(d.A, d.B);
  d.boundary = common.degree() > 0 && real_root_count(common) > 0;
  return d;
}

}  // namespace

bool has_root_on_unit_circle(const QPoly& f) {
  if (f.is_zero()) throw OutOfRange("root location of the zero polynomial");
  return cayley(f).boundary;
}

UnitDiskCount roots_in_unit_disk(const QPoly& f) {
  if (f.is_zero()) throw OutOfRange("root location of the zero polynomial");
  const CayleyData d = cayley(f);
  if (d.boundary) throw BoundaryRoot("polynomial " + f.to_string() + " has a root on the unit circle");
  const long n = d.g.degree();
  if (n <= 0) return {};
  // Argument principle along the imaginary axis: pi * (left - right).
  const long diff = (n % 2 == 0) ? -cauchy_index(d.B, d.A) : cauchy_index(d.A, d.B);
  const long left = (n + diff) / 2;
  if ((n + diff) % 2 != 0 || left < 0 || left > n) throw InternalCheckFailure("inconsistent unit-disk root count");
  return {static_cast<std::size_t>(left), static_cast<std::size_t>(n - left)};
}

}  // namespace solhom
