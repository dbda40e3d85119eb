#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "brep/errors.hpp"
#include "brep/ff.hpp"

namespace brep {

struct UTag {
  static constexpr std::array<const char*, 1> names{"t"};
};
struct WTag {
  static constexpr std::array<const char*, 1> names{"w"};
};
struct BiTag {
  static constexpr std::array<const char*, 2> names{"t", "z"};
};
struct MultiTag {
  static constexpr std::array<const char*, 4> names{"t1", "t2", "z1", "z2"};
};
struct AbcdTag {
  static constexpr std::array<const char*, 4> names{"a", "b", "c", "d"};
};

// Sparse polynomial over a finite field with integer exponent tuples. Zero
// coefficients are never stored, so structural equality is ring equality.
// A default-constructed value is the zero polynomial with no field attached;
// it adopts the field of whatever it is combined with.
template <std::size_t N, class Tag>
class Poly {
 public:
  using Key = std::array<int, N>;
  using Terms = std::map<Key, Fq>;

  Poly() = default;
  explicit Poly(const Field* f) : f_(f) {}

  static Poly constant(Fq c) {
    Poly r(c.field);
    r.add_term(Key{}, c);
    return r;
  }
  static Poly monomial(Fq c, const Key& k) {
    Poly r(c.field);
    r.add_term(k, c);
    return r;
  }
  static Poly one(const Field* f) { return constant(f->one()); }
  // The i-th variable.
  static Poly var(const Field* f, std::size_t i, int power = 1) {
    Key k{};
    k[i] = power;
    return monomial(f->one(), k);
  }

  const Field* field() const { return f_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Fq coeff(const Key& k) const {
    auto it = terms_.find(k);
    if (it != terms_.end()) return it->second;
    return f_ ? f_->zero() : Fq{};
  }

  void add_term(const Key& k, Fq c) {
    if (c.is_zero()) return;
    adopt(c.field);
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{});
  }
  Fq constant_term() const { return coeff(Key{}); }

  Poly operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    if (!f_) f_ = o.f_;
    return *this;
  }
  Poly operator-() const {
    Poly r(f_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly& operator-=(const Poly& o) { return *this += -o; }

  Poly operator*(const Poly& o) const {
    Poly r(f_ ? f_ : o.f_);
    for (const auto& [k1, c1] : terms_) {
      for (const auto& [k2, c2] : o.terms_) {
        Key k;
        for (std::size_t i = 0; i < N; ++i) k[i] = k1[i] + k2[i];
        r.add_term(k, c1 * c2);
      }
    }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator*(Fq s) const {
    Poly r(f_ ? f_ : s.field);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
  }
  friend Poly operator*(Fq s, const Poly& p) { return p * s; }

  Poly pow(unsigned k) const {
    Poly r = one(field_or_throw());
    Poly b = *this;
    while (k) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Evaluates at a point; negative powers require nonzero coordinates.
  Fq eval(const std::array<Fq, N>& x) const {
    const Field* f = field_or_throw();
    std::uint32_t acc = 0;
    for (const auto& [k, c] : terms_) {
      std::uint32_t term = c.v;
      for (std::size_t i = 0; i < N; ++i) {
        if (k[i] == 0) continue;
        if (x[i].field != f) throw invariant_violation("evaluation point in a different field");
        if (x[i].is_zero() && k[i] < 0) throw invalid_input("evaluation of a negative power at zero");
        term = f->mul(term, f->pow(x[i].v, k[i]));
      }
      acc = f->add(acc, term);
    }
    return f->element(acc);
  }

  // Applies a field map to each coefficient.
  template <class Map>
  Poly map_coeffs(const Field* target, Map&& fn) const {
    Poly r(target);
    for (const auto& [k, c] : terms_) r.add_term(k, fn(c));
    return r;
  }

  int min_exp(std::size_t i) const {
    int r = INT_MAX;
    for (const auto& [k, c] : terms_) r = std::min(r, k[i]);
    return r;
  }
  int max_exp(std::size_t i) const {
    int r = INT_MIN;
    for (const auto& [k, c] : terms_) r = std::max(r, k[i]);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << monomial_string(it->first, it->second);
    }
    return os.str();
  }

  static std::string monomial_string(const Key& k, Fq c) {
    std::ostringstream os;
    bool any = false;
    bool unit = c.is_one();
    if (!unit) {
      os << c.to_string();
      any = true;
    }
    for (std::size_t i = 0; i < N; ++i) {
      if (k[i] == 0) continue;
      if (any) os << '*';
      os << Tag::names[i];
      if (k[i] != 1) os << '^' << k[i];
      any = true;
    }
    if (!any) os << c.to_string();
    return os.str();
  }

 private:
  void adopt(const Field* f) {
    if (!f_) {
      f_ = f;
    } else if (f && f != f_) {
      throw invariant_violation("mixed-field polynomial arithmetic");
    }
  }
  const Field* field_or_throw() const {
    if (!f_) throw invariant_violation("polynomial without a field");
    return f_;
  }

  const Field* f_ = nullptr;
  Terms terms_;
};

using UPoly = Poly<1, UTag>;          // k[T]
using WLaurent = Poly<1, WTag>;       // Laurent polynomials in one variable
using BiLaurent = Poly<2, BiTag>;     // t >= 0, z in Z
using MultiLaurent = Poly<4, MultiTag>;
using AbcdPoly = Poly<4, AbcdTag>;

// Degree of a univariate polynomial; kNegInf for zero.
inline constexpr int kNegInf = INT_MIN;
inline int degree(const UPoly& f) { return f.is_zero() ? kNegInf : f.max_exp(0); }

// sum_e a_e T^{p^e}.
class PPoly {
 public:
  PPoly() = default;
  explicit PPoly(const Field* f) : f_(f) {}

  const Field* field() const { return f_; }
  const std::map<int, Fq>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void set(int e, Fq c);
  Fq coeff(int e) const;
  UPoly expand() const;
  bool operator==(const PPoly& o) const { return terms_ == o.terms_; }

 private:
  const Field* f_ = nullptr;
  std::map<int, Fq> terms_;
};

// Returns the p-power exponent e when n = p^e.
std::optional<int> log_p(long long n, unsigned p);

std::optional<PPoly> is_p_polynomial(const UPoly& f);

// A single term c T^{p^e}, c != 0.
struct PMonomial {
  Fq c;
  int e;
};
std::optional<PMonomial> as_p_monomial(const UPoly& f);

// Binomial coefficient modulo p (Lucas).
unsigned binomial_mod(long long n, long long k, unsigned p);

// t -> t1 + z1^2 t2, z -> z1 z2.
MultiLaurent substitute_group_law(const BiLaurent& f);
// f(t1, z1) and f(t2, z2).
MultiLaurent lift_first(const BiLaurent& f);
MultiLaurent lift_second(const BiLaurent& f);

// Entry restrictions: t := 0 gives a Laurent polynomial in z (kept as
// BiLaurent with t-degree 0); z := 1 gives a polynomial in t.
BiLaurent set_t_zero(const BiLaurent& f);
UPoly set_z_one(const BiLaurent& f);
BiLaurent from_upoly_t(const UPoly& f);

}  // namespace brep
