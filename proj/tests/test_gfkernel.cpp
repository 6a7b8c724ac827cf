#include <gtest/gtest.h>

#include <random>

#include "taumod/field.hpp"
#include "taumod/poly.hpp"

using namespace taumod;

namespace {

// Naive polynomial arithmetic over F_p on plain integer vectors, used as an
// independent oracle for irreducibility.
using IPoly = std::vector<int>;

void itrim(IPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

IPoly irem(IPoly f, const IPoly& g, int p) {
  itrim(f);
  int inv = 1;
  while ((inv * g.back()) % p != 1) ++inv;
  while (f.size() >= g.size()) {
    const int c = (f.back() * inv) % p;
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = ((f[shift + i] - c * g[i]) % p + p) % p;
    itrim(f);
  }
  return f;
}

// f monic of degree n over F_p is irreducible iff no monic divisor of degree
// 1..n/2 divides it; every candidate is tried.
bool brute_irreducible(const IPoly& f, int p) {
  const int n = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= n; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long k = 0; k < count; ++k) {
      IPoly g(d + 1);
      long v = k;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(v % p);
        v /= p;
      }
      g[d] = 1;
      if (irem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::uint32_t, unsigned>> small_fields() {
  std::vector<std::pair<std::uint32_t, unsigned>> out;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u, 53u, 59u, 61u}) {
    std::uint32_t q = p;
    for (unsigned a = 1; q <= 64; ++a, q *= p) out.emplace_back(p, a);
  }
  return out;
}

}  // namespace

TEST(MakeField, PrimeField) {
  auto f = make_field(2, 1);
  EXPECT_EQ(f->q(), 2u);
  EXPECT_EQ(f->mul(1, 1), 1);
  EXPECT_EQ(f->add(1, 1), 0);
}

TEST(MakeField, F4WithGivenModulus) {
  auto f = make_field(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  const Elem g = f->from_coeffs({0, 1});
  EXPECT_EQ(f->mul(g, g), f->add(g, 1));
}

TEST(MakeField, F9ModulusIsIrreducibleByExhaustion) {
  auto f = make_field(3, 2);
  const auto& m = f->modulus();
  IPoly im(m.begin(), m.end());
  EXPECT_TRUE(brute_irreducible(im, 3));
  // the chosen modulus is the smallest irreducible in the search order
  for (int c1 = 0; c1 < 3; ++c1)
    for (int c0 = 0; c0 < 3; ++c0) {
      IPoly cand{c0, c1, 1};
      if (c1 * 3 + c0 >= static_cast<int>(m[1] * 3 + m[0])) continue;
      EXPECT_FALSE(brute_irreducible(cand, 3));
    }
}

TEST(MakeField, Rejections) {
  EXPECT_THROW(make_field(4, 1), Error);
  EXPECT_THROW(make_field(2, 2, std::vector<std::uint32_t>{1, 0, 1}), Error);
  EXPECT_THROW(make_field(2, 2, std::vector<std::uint32_t>{1, 1}), Error);
  EXPECT_THROW(make_field(2, 17), Error);
}

TEST(MakeField, ModuliAgreeWithBruteForce) {
  for (auto [p, a] : small_fields()) {
    if (a == 1) continue;
    auto f = make_field(p, a);
    IPoly im(f->modulus().begin(), f->modulus().end());
    EXPECT_TRUE(brute_irreducible(im, static_cast<int>(p))) << p << "^" << a;
  }
}

TEST(FieldAxioms, ExhaustiveUpTo64) {
  for (auto [p, a] : small_fields()) {
    auto f = make_field(p, a);
    const std::uint32_t q = f->q();
    for (std::uint32_t x = 0; x < q; ++x) {
      const Elem ex = static_cast<Elem>(x);
      ASSERT_EQ(f->pow(ex, q), ex);
      if (x) ASSERT_EQ(f->mul(ex, f->inv(ex)), 1);
      ASSERT_EQ(f->add(ex, f->neg(ex)), 0);
      for (std::uint32_t y = 0; y < q; ++y) {
        const Elem ey = static_cast<Elem>(y);
        ASSERT_EQ(f->mul(ex, ey), f->mul(ey, ex));
        ASSERT_EQ(f->add(ex, ey), f->add(ey, ex));
        for (std::uint32_t z = 0; z < q; ++z) {
          const Elem ez = static_cast<Elem>(z);
          ASSERT_EQ(f->mul(f->mul(ex, ey), ez), f->mul(ex, f->mul(ey, ez))) << p << "^" << a;
          ASSERT_EQ(f->mul(ex, f->add(ey, ez)), f->add(f->mul(ex, ey), f->mul(ex, ez)));
        }
      }
    }
  }
}

TEST(FieldAxioms, TablesAgreeWithSchoolbookProduct) {
  // multiply coefficient vectors and reduce by the modulus by hand
  for (auto [p, a] : small_fields()) {
    auto f = make_field(p, a);
    const auto& m = f->modulus();
    for (std::uint32_t x = 0; x < f->q(); ++x)
      for (std::uint32_t y = 0; y < f->q(); ++y) {
        auto cx = f->coeffs(static_cast<Elem>(x)), cy = f->coeffs(static_cast<Elem>(y));
        IPoly prod(2 * a, 0);
        for (unsigned i = 0; i < a; ++i)
          for (unsigned j = 0; j < a; ++j) prod[i + j] = (prod[i + j] + static_cast<int>(cx[i] * cy[j])) % static_cast<int>(p);
        IPoly r = irem(prod, IPoly(m.begin(), m.end()), static_cast<int>(p));
        std::vector<std::uint32_t> rc(a, 0);
        for (std::size_t i = 0; i < r.size(); ++i) rc[i] = static_cast<std::uint32_t>(r[i]);
        ASSERT_EQ(f->mul(static_cast<Elem>(x), static_cast<Elem>(y)), f->from_coeffs(rc));
      }
  }
}

TEST(Frobenius, Examples) {
  auto f2 = make_field(2, 1);
  EXPECT_EQ(frobenius_power(FieldElement(f2, 1), 1).code(), 1);
  auto f4 = make_field(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  const Elem g = f4->from_coeffs({0, 1});
  EXPECT_EQ(frobenius_power(FieldElement(f4, g), 1).code(), f4->add(g, 1));
  // F_q fixes itself when q is the whole field
  for (Elem x = 0; x < 4; ++x) EXPECT_EQ(frobenius_power(FieldElement(f4, x), 1, 2).code(), x);
}

TEST(Frobenius, AdditiveOverF8) {
  auto f = make_field(2, 3);
  for (Elem x = 0; x < 8; ++x)
    for (Elem y = 0; y < 8; ++y) {
      FieldElement a(f, x), b(f, y);
      EXPECT_EQ(frobenius_power(a + b, 1), frobenius_power(a, 1) + frobenius_power(b, 1));
      EXPECT_EQ(frobenius_power(a * b, 1), frobenius_power(a, 1) * frobenius_power(b, 1));
    }
}

TEST(Frobenius, FullPowerIsIdentity) {
  for (auto [p, a] : small_fields()) {
    auto f = make_field(p, a);
    for (unsigned k = 0; k < 3; ++k)
      for (std::uint32_t x = 0; x < f->q(); ++x)
        ASSERT_EQ(frobenius_power(FieldElement(f, static_cast<Elem>(x)), a * k).code(), x);
  }
}

TEST(FactorPoly, Examples) {
  auto f2 = make_field(2, 1);
  auto facs = factor_poly(Poly(f2, {0, 1, 1}));
  ASSERT_EQ(facs.size(), 2u);
  EXPECT_EQ(facs[0].poly, Poly(f2, {0, 1}));
  EXPECT_EQ(facs[0].multiplicity, 1u);
  EXPECT_EQ(facs[1].poly, Poly(f2, {1, 1}));
  EXPECT_EQ(facs[1].multiplicity, 1u);

  facs = factor_poly(Poly(f2, {1, 0, 1}));
  ASSERT_EQ(facs.size(), 1u);
  EXPECT_EQ(facs[0].poly, Poly(f2, {1, 1}));
  EXPECT_EQ(facs[0].multiplicity, 2u);

  EXPECT_THROW(factor_poly(Poly(f2)), Error);
}

TEST(FactorPoly, MultiplyBack500Seeded) {
  std::mt19937_64 rng(12345);
  const std::vector<FieldPtr> fields{make_field(2, 1), make_field(2, 2), make_field(3, 1), make_field(3, 2),
                                     make_field(5, 1)};
  for (int trial = 0; trial < 500; ++trial) {
    const auto& F = fields[trial % fields.size()];
    const int deg = 1 + static_cast<int>(rng() % 10);
    std::vector<Elem> c(deg + 1);
    for (auto& v : c) v = static_cast<Elem>(rng() % F->q());
    if (!c.back()) c.back() = 1;
    const Poly f(F, c);
    const auto facs = factor_poly(f, trial);
    Poly prod = Poly::constant(F, f.lead());
    for (auto& fac : facs) {
      ASSERT_TRUE(is_irreducible(fac.poly));
      ASSERT_EQ(fac.poly.lead(), 1);
      for (unsigned k = 0; k < fac.multiplicity; ++k) prod = prod * fac.poly;
    }
    ASSERT_EQ(prod, f) << f.format();
    // the result does not depend on the seed
    const auto again = factor_poly(f, trial + 1000);
    ASSERT_EQ(again.size(), facs.size());
    for (std::size_t i = 0; i < facs.size(); ++i) {
      ASSERT_EQ(again[i].poly, facs[i].poly);
      ASSERT_EQ(again[i].multiplicity, facs[i].multiplicity);
    }
  }
}

TEST(FactorPoly, MonicDegreeUpTo8OverF4) {
  auto F = make_field(2, 2);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = 1 + static_cast<int>(rng() % 8);
    std::vector<Elem> c(deg + 1);
    for (auto& v : c) v = static_cast<Elem>(rng() % 4);
    c.back() = 1;
    const Poly f(F, c);
    Poly prod = Poly::constant(F, 1);
    for (auto& fac : factor_poly(f, 99))
      for (unsigned k = 0; k < fac.multiplicity; ++k) prod = prod * fac.poly;
    ASSERT_EQ(prod, f);
  }
}

TEST(Irreducible, AgreesWithBruteForceOverF3) {
  auto F = make_field(3, 1);
  for (int deg = 1; deg <= 5; ++deg) {
    long count = 1;
    for (int i = 0; i < deg; ++i) count *= 3;
    for (long k = 0; k < count; ++k) {
      IPoly ip(deg + 1);
      long v = k;
      for (int i = 0; i < deg; ++i) {
        ip[i] = static_cast<int>(v % 3);
        v /= 3;
      }
      ip[deg] = 1;
      std::vector<Elem> c(ip.begin(), ip.end());
      ASSERT_EQ(is_irreducible(Poly(F, c)), brute_irreducible(ip, 3));
    }
  }
}

TEST(PolyOps, DivmodRoundTrip) {
  auto F = make_field(3, 2);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    std::vector<Elem> a(1 + rng() % 9), b(1 + rng() % 5);
    for (auto& v : a) v = static_cast<Elem>(rng() % 9);
    for (auto& v : b) v = static_cast<Elem>(rng() % 9);
    b.back() = 1;
    const Poly f(F, a), g(F, b);
    auto [qt, r] = divmod(f, g);
    EXPECT_LT(r.degree(), g.degree());
    EXPECT_EQ(qt * g + r, f);
  }
}
