#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace brep {

class Field;

// An element of a finite field, stored as the index sum c_i p^i of its
// coefficient vector over the generator basis.
struct Fq {
  const Field* field = nullptr;
  std::uint32_t v = 0;

  bool is_zero() const { return v == 0; }
  bool is_one() const;

  Fq operator+(Fq o) const;
  Fq operator-(Fq o) const;
  Fq operator*(Fq o) const;
  Fq operator/(Fq o) const;
  Fq operator-() const;
  Fq& operator+=(Fq o) { return *this = *this + o; }
  Fq& operator-=(Fq o) { return *this = *this - o; }
  Fq& operator*=(Fq o) { return *this = *this * o; }

  Fq inv() const;
  Fq pow(long long k) const;
  Fq frobenius() const;

  bool operator==(const Fq& o) const { return field == o.field && v == o.v; }
  bool operator!=(const Fq& o) const { return !(*this == o); }

  std::string to_string() const;
};

// F_{p^m} = F_p[x] / (modulus). Instances are interned and never destroyed,
// so raw pointers to them stay valid for the life of the process.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 20;
  static constexpr unsigned kMaxDegree = 20;

  // Empty modulus selects the lexicographically smallest monic irreducible
  // polynomial of degree m (constant coefficient compared first).
  static const Field* get(unsigned p, unsigned m, const std::vector<unsigned>& modulus = {});
  // Field of order q = p^j with the default modulus.
  static const Field* of_order(std::uint32_t q);

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  std::uint32_t q() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Fq zero() const { return {this, 0}; }
  Fq one() const { return {this, 1}; }
  Fq gen() const;
  Fq from_int(long long n) const;
  Fq from_coeffs(const std::vector<unsigned>& c) const;
  Fq element(std::uint32_t index) const { return {this, index}; }
  std::vector<unsigned> coeffs(Fq x) const;
  bool in_prime_field(Fq x) const { return x.v < p_; }

  // Raw index arithmetic for hot loops.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg_[b]); }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, long long k) const;

  std::string to_string(Fq x) const;
  std::string describe() const;

  static bool is_prime(unsigned n);
  static bool is_irreducible(unsigned p, const std::vector<unsigned>& monic);

 private:
  Field(unsigned p, unsigned m, std::vector<unsigned> modulus);

  unsigned p_, m_;
  std::uint32_t q_;
  std::vector<unsigned> modulus_;
  std::vector<std::uint32_t> pw_;  // p^i
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> neg_, log_, exp_;
};

// Field embedding F_{p^a} -> F_{p^b} with a | b, sending the generator to the
// first root (in index order) of the source modulus.
class Embedding {
 public:
  Embedding(const Field* from, const Field* to);
  Fq operator()(Fq x) const;
  const Field* from() const { return from_; }
  const Field* to() const { return to_; }

 private:
  const Field* from_;
  const Field* to_;
  std::vector<std::uint32_t> map_;
};

// Sends coefficients of `from` into `to`. Uses the embedding when one exists;
// otherwise only prime-field elements can be mapped, and anything else
// raises invalid_input.
class CoefficientMap {
 public:
  CoefficientMap(const Field* from, const Field* to);
  Fq operator()(Fq x) const;

 private:
  const Field* to_;
  std::optional<Embedding> emb_;
};

}  // namespace brep
