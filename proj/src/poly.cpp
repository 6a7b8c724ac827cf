#include "taumod/poly.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace taumod {

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  trim();
}

Poly Poly::monomial(FieldPtr field, Elem c, std::size_t degree) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(field), std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero() || lead() == 1) return *this;
  Poly out = *this;
  const Elem il = field_->inv(lead());
  field_->scale(out.c_.data(), il, out.c_.size());
  return out;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(field_);
  std::vector<Elem> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    d[i - 1] = field_->mul(c_[i], field_->from_int(static_cast<std::int64_t>(i)));
  return Poly(field_, std::move(d));
}

Elem Poly::eval(Elem x) const {
  Elem acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_->add(field_->mul(acc, x), *it);
  return acc;
}

std::string Poly::format(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Elem c = c_[i];
    if (!c) continue;
    if (!first) out << " + ";
    first = false;
    const bool bracket = !field_->is_prime_field() && c != 1;
    if (i == 0 || c != 1) out << (bracket ? "(" : "") << field_->format(c) << (bracket ? ")" : "");
    if (i > 0) {
      if (c != 1) out << '*';
      out << var;
      if (i > 1) out << '^' << i;
    }
  }
  return out.str();
}

Poly operator+(const Poly& f, const Poly& g) {
  const auto& F = f.field_ ? f.field_ : g.field_;
  std::vector<Elem> out(std::max(f.c_.size(), g.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F->add(f.coeff(i), g.coeff(i));
  return Poly(F, std::move(out));
}

Poly operator-(const Poly& f, const Poly& g) {
  const auto& F = f.field_ ? f.field_ : g.field_;
  std::vector<Elem> out(std::max(f.c_.size(), g.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F->sub(f.coeff(i), g.coeff(i));
  return Poly(F, std::move(out));
}

Poly operator*(const Poly& f, const Poly& g) {
  const auto& F = f.field_ ? f.field_ : g.field_;
  if (f.is_zero() || g.is_zero()) return Poly(F);
  std::vector<Elem> out(f.c_.size() + g.c_.size() - 1, 0);
  for (std::size_t i = 0; i < f.c_.size(); ++i) F->axpy(out.data() + i, g.c_.data(), f.c_[i], g.c_.size());
  return Poly(F, std::move(out));
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw Error("polynomial division by zero");
  const auto& F = g.field();
  if (f.degree() < g.degree()) return {Poly(F), f};
  std::vector<Elem> rem = f.coeffs();
  std::vector<Elem> quo(f.degree() - g.degree() + 1, 0);
  const Elem il = F->inv(g.lead());
  const int dg = g.degree();
  for (int k = f.degree(); k >= dg; --k) {
    const Elem c = F->mul(rem[k], il);
    if (!c) continue;
    quo[k - dg] = c;
    F->axpy(rem.data() + (k - dg), g.coeffs().data(), F->neg(c), g.coeffs().size());
  }
  rem.resize(dg);
  return {Poly(F, std::move(quo)), Poly(F, std::move(rem))};
}

Poly operator/(const Poly& f, const Poly& g) { return divmod(f, g).first; }
Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).second; }

bool operator<(const Poly& f, const Poly& g) {
  if (f.degree() != g.degree()) return f.degree() < g.degree();
  for (int i = f.degree(); i >= 0; --i)
    if (f.c_[i] != g.c_[i]) return f.c_[i] < g.c_[i];
  return false;
}

Poly gcd(Poly f, Poly g) {
  while (!g.is_zero()) {
    Poly r = f % g;
    f = std::move(g);
    g = std::move(r);
  }
  return f.monic();
}

Poly mulmod(const Poly& f, const Poly& g, const Poly& m) { return (f * g) % m; }

Poly powmod(Poly base, std::uint64_t e, const Poly& m) {
  Poly acc = Poly::constant(m.field(), 1) % m;
  base = base % m;
  while (e) {
    if (e & 1) acc = mulmod(acc, base, m);
    e >>= 1;
    if (e) base = mulmod(base, base, m);
  }
  return acc;
}

Poly frobenius_mod(const Poly& b, const Poly& m) { return powmod(b, b.field() ? b.field()->q() : m.field()->q(), m); }

namespace {

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Poly& f) {
  const auto& F = f.field();
  const std::uint32_t p = F->p();
  // c^(1/p) = c^(p^(a-1)) in F_{p^a}
  std::uint64_t root_exp = 1;
  for (unsigned i = 1; i < F->a(); ++i) root_exp *= p;
  std::vector<Elem> out(f.degree() / p + 1, 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F->pow(f.coeff(i * p), root_exp);
  return Poly(F, std::move(out));
}

void squarefree(const Poly& f, unsigned mult, std::vector<Factor>& out) {
  if (f.degree() < 1) return;
  const auto& F = f.field();
  const Poly fp = f.derivative();
  if (fp.is_zero()) {
    squarefree(pth_root(f), mult * F->p(), out);
    return;
  }
  Poly c = gcd(f, fp);
  Poly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * mult});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree(pth_root(c.monic()), mult * F->p(), out);
}

std::vector<std::pair<Poly, unsigned>> distinct_degree(Poly f) {
  std::vector<std::pair<Poly, unsigned>> out;
  const auto& F = f.field();
  const Poly x = Poly::x(F);
  Poly h = x % f;
  for (unsigned d = 1; 2 * static_cast<int>(d) <= f.degree(); ++d) {
    h = frobenius_mod(h, f);
    Poly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), static_cast<unsigned>(f.degree()));
  return out;
}

Poly random_poly(const FieldPtr& F, int below_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, F->q() - 1);
  std::vector<Elem> c(below_degree);
  for (auto& v : c) v = static_cast<Elem>(dist(rng));
  return Poly(F, std::move(c));
}

void equal_degree(const Poly& f, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const auto& F = f.field();
  const std::size_t r = f.degree() / d;
  std::vector<Poly> parts{f};
  while (parts.size() < r) {
    const Poly a = random_poly(F, f.degree(), rng);
    if (a.degree() < 1) continue;
    Poly b(F);
    if (F->p() == 2) {
      // absolute trace to F_2 over F_{q^d}
      Poly t = a % f, acc = a % f;
      for (unsigned i = 1; i < F->a() * d; ++i) {
        t = mulmod(t, t, f);
        acc = acc + t;
      }
      b = acc;
    } else {
      // a^((q^d-1)/2) = N(a)^((q-1)/2) with N(a) = a^(1+q+...+q^(d-1))
      Poly t = a % f, norm = a % f;
      for (unsigned i = 1; i < d; ++i) {
        t = frobenius_mod(t, f);
        norm = mulmod(norm, t, f);
      }
      b = powmod(norm, (F->q() - 1) / 2, f) - Poly::constant(F, 1);
    }
    std::vector<Poly> next;
    for (auto& u : parts) {
      if (static_cast<unsigned>(u.degree()) == d) {
        next.push_back(u);
        continue;
      }
      Poly g = gcd(u, b % u);
      if (g.degree() > 0 && g.degree() < u.degree()) {
        next.push_back(g);
        next.push_back((u / g).monic());
      } else {
        next.push_back(u);
      }
    }
    parts = std::move(next);
  }
  for (auto& u : parts) out.push_back(u.monic());
}

}  // namespace

bool is_irreducible(const Poly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly g = f.monic();
  const auto& F = f.field();
  const Poly x = Poly::x(F);
  // x^(q^k) mod g for k = 1..n
  std::vector<Poly> frob(n + 1, Poly(F));
  frob[0] = x % g;
  for (int k = 1; k <= n; ++k) frob[k] = frobenius_mod(frob[k - 1], g);
  if (!(frob[n] == frob[0])) return false;
  for (unsigned r : prime_factors(static_cast<unsigned>(n))) {
    if (gcd(frob[n / r] - x, g).degree() != 0) return false;
  }
  return true;
}

Poly smallest_irreducible(const FieldPtr& field, unsigned degree) {
  if (degree == 0) throw Error("irreducible polynomials have positive degree");
  const std::uint64_t q = field->q();
  std::uint64_t count = 1;
  for (unsigned i = 0; i < degree && count <= UINT64_MAX / q; ++i) count *= q;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::vector<Elem> c(degree + 1, 0);
    std::uint64_t v = k;
    for (unsigned i = 0; i < degree; ++i) {
      c[i] = static_cast<Elem>(v % q);
      v /= q;
    }
    c[degree] = 1;
    Poly f(field, std::move(c));
    if (is_irreducible(f)) return f;
  }
  throw Error("no irreducible polynomial found");
}

std::vector<Factor> factor_poly(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw Error("cannot factor the zero polynomial");
  std::mt19937_64 rng(seed);
  std::vector<Factor> sqfree;
  squarefree(f.monic(), 1, sqfree);
  std::map<std::vector<Elem>, Factor> merged;
  for (const auto& [part, mult] : sqfree) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree(block, d, rng, irr);
      for (auto& g : irr) {
        auto [it, inserted] = merged.try_emplace(g.coeffs(), Factor{g, 0});
        it->second.multiplicity += mult;
      }
    }
  }
  std::vector<Factor> out;
  out.reserve(merged.size());
  for (auto& [k, v] : merged) out.push_back(std::move(v));
  std::sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) { return x.poly < y.poly; });
  return out;
}

}  // namespace taumod
