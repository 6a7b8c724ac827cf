#include "taumod/field.hpp"

#include <sstream>

#include "taumod/poly.hpp"

namespace taumod {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

GaloisField::GaloisField(std::uint32_t p, unsigned a, std::vector<std::uint32_t> modulus)
    : p_(p), a_(a), modulus_(std::move(modulus)) {
  q_ = 1;
  for (unsigned i = 0; i < a_; ++i) q_ *= p_;

  neg_.resize(q_);
  for (std::uint32_t x = 0; x < q_; ++x) {
    std::uint32_t out = 0, scale = 1, v = x;
    for (unsigned i = 0; i < a_; ++i) {
      std::uint32_t d = v % p_;
      v /= p_;
      out += ((p_ - d) % p_) * scale;
      scale *= p_;
    }
    neg_[x] = static_cast<Elem>(out);
  }
  if (p_ != 2 && q_ <= 256) {
    add_table_.resize(std::size_t{q_} * q_);
    for (std::uint32_t x = 0; x < q_; ++x)
      for (std::uint32_t y = 0; y < q_; ++y)
        add_table_[std::size_t{x} * q_ + y] = add_digits(static_cast<Elem>(x), static_cast<Elem>(y));
  }

  // Multiplicative generator: smallest code whose order is q - 1.
  const std::uint32_t order = q_ - 1;
  if (order > 1) {
    const auto primes = prime_divisors(order);
    for (std::uint32_t g = 2; g < q_; ++g) {
      bool ok = true;
      for (auto r : primes) {
        Elem acc = 1, base = static_cast<Elem>(g);
        std::uint64_t e = order / r;
        while (e) {
          if (e & 1) acc = mul_slow(acc, base);
          base = mul_slow(base, base);
          e >>= 1;
        }
        if (acc == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        generator_ = static_cast<Elem>(g);
        break;
      }
    }
  }
  log_.assign(q_, 0);
  exp_.assign(2 * std::size_t{order} + 1, 0);
  Elem acc = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    exp_[i] = acc;
    exp_[i + order] = acc;
    log_[acc] = i;
    acc = mul_slow(acc, generator_);
  }
  if (q_ <= 256) {
    mul_table_.assign(std::size_t{q_} * q_, 0);
    for (std::uint32_t x = 1; x < q_; ++x)
      for (std::uint32_t y = 1; y < q_; ++y)
        mul_table_[std::size_t{x} * q_ + y] = exp_[log_[x] + log_[y]];
  }
}

Elem GaloisField::add_digits(Elem x, Elem y) const {
  std::uint32_t out = 0, scale = 1, u = x, v = y;
  for (unsigned i = 0; i < a_; ++i) {
    out += ((u % p_ + v % p_) % p_) * scale;
    u /= p_;
    v /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(out);
}

Elem GaloisField::mul_slow(Elem x, Elem y) const {
  auto cx = coeffs(x), cy = coeffs(y);
  std::vector<std::uint64_t> prod(2 * a_, 0);
  for (unsigned i = 0; i < a_; ++i)
    for (unsigned j = 0; j < a_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{cx[i]} * cy[j]) % p_;
  // reduce by the monic modulus from the top
  for (int k = 2 * static_cast<int>(a_) - 2; k >= static_cast<int>(a_); --k) {
    std::uint64_t c = prod[k];
    if (!c) continue;
    for (unsigned i = 0; i <= a_; ++i) {
      auto& slot = prod[k - a_ + i];
      slot = (slot + (p_ - c) * modulus_[i]) % p_;
    }
  }
  prod.resize(a_);
  return from_coeffs(std::vector<std::uint32_t>(prod.begin(), prod.end()));
}

Elem GaloisField::inv(Elem x) const {
  if (x == 0) throw Error("inverse of zero in F_" + std::to_string(q_));
  const std::uint32_t order = q_ - 1;
  return exp_[(order - log_[x]) % order];
}

Elem GaloisField::pow(Elem x, std::uint64_t e) const {
  if (e == 0) return 1;
  if (x == 0) return 0;
  const std::uint64_t order = q_ - 1;
  return exp_[(std::uint64_t{log_[x]} * (e % order)) % order];
}

Elem GaloisField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem GaloisField::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() > a_) throw Error("field element has too many coefficients");
  std::uint32_t out = 0, scale = 1;
  for (auto v : c) {
    if (v >= p_) throw Error("field coefficient " + std::to_string(v) + " not reduced mod " + std::to_string(p_));
    out += v * scale;
    scale *= p_;
  }
  return static_cast<Elem>(out);
}

std::vector<std::uint32_t> GaloisField::coeffs(Elem x) const {
  std::vector<std::uint32_t> out(a_);
  std::uint32_t v = x;
  for (unsigned i = 0; i < a_; ++i) {
    out[i] = v % p_;
    v /= p_;
  }
  return out;
}

Elem GaloisField::frobenius(Elem x, unsigned n) const {
  n %= a_;
  for (unsigned i = 0; i < n; ++i) x = pow(x, p_);
  return x;
}

void GaloisField::axpy(Elem* dst, const Elem* src, Elem c, std::size_t n) const {
  if (c == 0) return;
  if (p_ == 2 && c == 1) {
    for (std::size_t k = 0; k < n; ++k) dst[k] ^= src[k];
    return;
  }
  if (!mul_table_.empty()) {
    const Elem* mrow = &mul_table_[std::size_t{c} * q_];
    if (p_ == 2) {
      for (std::size_t k = 0; k < n; ++k) dst[k] ^= mrow[src[k]];
    } else {
      const Elem* atab = add_table_.data();
      for (std::size_t k = 0; k < n; ++k)
        if (src[k]) dst[k] = atab[std::size_t{dst[k]} * q_ + mrow[src[k]]];
    }
    return;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (src[k]) dst[k] = add(dst[k], mul(c, src[k]));
}

void GaloisField::scale(Elem* row, Elem c, std::size_t n) const {
  if (c == 1) return;
  for (std::size_t k = 0; k < n; ++k) row[k] = mul(row[k], c);
}

std::string GaloisField::format(Elem x) const {
  if (a_ == 1) return std::to_string(x);
  auto c = coeffs(x);
  std::ostringstream out;
  bool first = true;
  for (int i = static_cast<int>(a_) - 1; i >= 0; --i) {
    if (!c[i]) continue;
    if (!first) out << '+';
    first = false;
    if (i == 0) {
      out << c[i];
      continue;
    }
    if (c[i] != 1) out << c[i];
    out << 'u';
    if (i > 1) out << '^' << i;
  }
  if (first) out << '0';
  return out.str();
}

FieldPtr make_field(std::uint32_t p, unsigned a, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw Error("characteristic " + std::to_string(p) + " is not prime");
  if (a == 0) throw Error("field degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < a; ++i) {
    q *= p;
    if (q > 65536) throw Error("fields larger than 2^16 elements are not supported");
  }
  std::vector<std::uint32_t> mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != a + 1) throw Error("modulus must have degree " + std::to_string(a));
    for (auto c : mod)
      if (c >= p) throw Error("modulus coefficient not reduced mod p");
    if (mod.back() != 1) throw Error("modulus must be monic");
    if (a > 1) {
      auto prime = make_field(p, 1);
      std::vector<Elem> c(mod.begin(), mod.end());
      if (!is_irreducible(Poly(prime, c))) throw Error("modulus is reducible over F_" + std::to_string(p));
    }
  } else if (a == 1) {
    mod = {0, 1};
  } else {
    auto prime = make_field(p, 1);
    auto g = smallest_irreducible(prime, a);
    mod.assign(g.coeffs().begin(), g.coeffs().end());
  }
  return FieldPtr(new GaloisField(p, a, std::move(mod)));
}

FieldElement frobenius_power(const FieldElement& x, unsigned n, unsigned base_degree) {
  const auto& f = *x.field();
  if (base_degree == 0 || f.a() % base_degree != 0) throw Error("base field is not a subfield");
  Elem v = x.code();
  const std::uint64_t steps = (std::uint64_t{n} * base_degree) % f.a();
  for (std::uint64_t i = 0; i < steps; ++i) v = f.pow(v, f.p());
  return {x.field(), v};
}

}  // namespace taumod
