#include "brep/poly.hpp"

namespace brep {

void PPoly::set(int e, Fq c) {
  if (e < 0) throw invalid_input("negative Frobenius index");
  if (!f_) f_ = c.field;
  if (c.is_zero()) {
    terms_.erase(e);
  } else {
    terms_[e] = c;
  }
}

Fq PPoly::coeff(int e) const {
  auto it = terms_.find(e);
  if (it != terms_.end()) return it->second;
  return f_ ? f_->zero() : Fq{};
}

UPoly PPoly::expand() const {
  UPoly r(f_);
  if (!f_) return r;
  for (const auto& [e, c] : terms_) {
    long long d = 1;
    for (int i = 0; i < e; ++i) d *= f_->p();
    r.add_term({static_cast<int>(d)}, c);
  }
  return r;
}

std::optional<int> log_p(long long n, unsigned p) {
  if (n < 1) return std::nullopt;
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1) return std::nullopt;
  return e;
}

std::optional<PPoly> is_p_polynomial(const UPoly& f) {
  PPoly r(f.field());
  for (const auto& [k, c] : f.terms()) {
    auto e = log_p(k[0], f.field()->p());
    if (!e) return std::nullopt;
    r.set(*e, c);
  }
  return r;
}

std::optional<PMonomial> as_p_monomial(const UPoly& f) {
  if (f.size() != 1) return std::nullopt;
  const auto& [k, c] = *f.terms().begin();
  auto e = log_p(k[0], f.field()->p());
  if (!e) return std::nullopt;
  return PMonomial{c, *e};
}

unsigned binomial_mod(long long n, long long k, unsigned p) {
  if (k < 0 || k > n) return 0;
  unsigned r = 1;
  while (n > 0 || k > 0) {
    long long ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // small binomial via multiplicative formula mod p
    unsigned long long num = 1, den = 1;
    for (long long i = 0; i < ki; ++i) {
      num = num * static_cast<unsigned long long>(ni - i) % p;
      den = den * static_cast<unsigned long long>(i + 1) % p;
    }
    // den is invertible since ki < p
    unsigned long long inv = 1, b = den, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    r = static_cast<unsigned>(r * (num * inv % p) % p);
    n /= p;
    k /= p;
  }
  return r;
}

MultiLaurent substitute_group_law(const BiLaurent& f) {
  MultiLaurent r(f.field());
  const Field* F = f.field();
  if (!F) return r;
  for (const auto& [k, c] : f.terms()) {
    const int i = k[0], j = k[1];
    for (int s = 0; s <= i; ++s) {
      unsigned b = binomial_mod(i, s, F->p());
      if (b == 0) continue;
      r.add_term({i - s, s, 2 * s + j, j}, c * F->from_int(b));
    }
  }
  return r;
}

MultiLaurent lift_first(const BiLaurent& f) {
  MultiLaurent r(f.field());
  for (const auto& [k, c] : f.terms()) r.add_term({k[0], 0, k[1], 0}, c);
  return r;
}

MultiLaurent lift_second(const BiLaurent& f) {
  MultiLaurent r(f.field());
  for (const auto& [k, c] : f.terms()) r.add_term({0, k[0], 0, k[1]}, c);
  return r;
}

BiLaurent set_t_zero(const BiLaurent& f) {
  BiLaurent r(f.field());
  for (const auto& [k, c] : f.terms()) {
    if (k[0] == 0) r.add_term(k, c);
  }
  return r;
}

UPoly set_z_one(const BiLaurent& f) {
  UPoly r(f.field());
  for (const auto& [k, c] : f.terms()) r.add_term({k[0]}, c);
  return r;
}

BiLaurent from_upoly_t(const UPoly& f) {
  BiLaurent r(f.field());
  for (const auto& [k, c] : f.terms()) r.add_term({k[0], 0}, c);
  return r;
}

}  // namespace brep
