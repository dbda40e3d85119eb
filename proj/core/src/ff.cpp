#include "brep/ff.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "brep/errors.hpp"

namespace brep {

namespace {

using Digits = std::vector<unsigned>;

// Remainder of a modulo monic b over F_p; both ascending.
Digits poly_mod(Digits a, const Digits& b, unsigned p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    unsigned lead = a.back();
    std::size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

Digits poly_mulmod(const Digits& a, const Digits& b, const Digits& mod, unsigned p) {
  Digits r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<unsigned>((r[i + j] + 1ull * a[i] * b[j]) % p);
    }
  }
  r = poly_mod(std::move(r), mod, p);
  r.resize(mod.size() - 1, 0);
  return r;
}

bool all_zero(const Digits& d) {
  for (unsigned x : d) {
    if (x != 0) return false;
  }
  return true;
}

struct Registry {
  std::mutex mu;
  std::map<std::tuple<unsigned, unsigned, std::vector<unsigned>>, std::unique_ptr<Field>> fields;
};

Registry& registry() {
  static Registry r;
  return r;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

bool Field::is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool Field::is_irreducible(unsigned p, const std::vector<unsigned>& monic) {
  const unsigned m = static_cast<unsigned>(monic.size()) - 1;
  if (m == 1) return true;
  // Trial division by every monic polynomial of degree 1..m/2.
  for (unsigned d = 1; d <= m / 2; ++d) {
    std::uint64_t count = ipow(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Digits f(d + 1, 0);
      std::uint64_t x = idx;
      for (unsigned i = 0; i < d; ++i) {
        f[i] = static_cast<unsigned>(x % p);
        x /= p;
      }
      f[d] = 1;
      if (all_zero(poly_mod(monic, f, p))) return false;
    }
  }
  return true;
}

const Field* Field::get(unsigned p, unsigned m, const std::vector<unsigned>& modulus) {
  if (!is_prime(p)) throw invalid_input("characteristic " + std::to_string(p) + " is not prime");
  if (m < 1 || m > kMaxDegree) {
    throw invalid_input("extension degree must be in [1, " + std::to_string(kMaxDegree) + "]");
  }
  if (ipow(p, m) > kMaxOrder) throw invalid_input("field order exceeds supported size");

  std::vector<unsigned> mod = modulus;
  if (mod.empty()) {
    // Lexicographic scan with the constant coefficient most significant.
    std::uint64_t count = ipow(p, m);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Digits f(m + 1, 0);
      std::uint64_t x = idx;
      for (unsigned i = m; i-- > 0;) {
        f[i] = static_cast<unsigned>(x % p);
        x /= p;
      }
      f[m] = 1;
      if (m == 1 || is_irreducible(p, f)) {
        mod = f;
        break;
      }
    }
  } else {
    if (mod.size() != m + 1) throw invalid_input("modulus must have degree m");
    for (unsigned c : mod) {
      if (c >= p) throw invalid_input("modulus coefficient out of range");
    }
    if (mod.back() != 1) throw invalid_input("modulus must be monic");
    if (!is_irreducible(p, mod)) throw invalid_input("modulus is reducible");
  }

  Registry& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_tuple(p, m, mod);
  auto it = reg.fields.find(key);
  if (it != reg.fields.end()) return it->second.get();
  auto* f = new Field(p, m, mod);
  reg.fields.emplace(key, std::unique_ptr<Field>(f));
  return f;
}

const Field* Field::of_order(std::uint32_t q) {
  for (unsigned p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) break;
    unsigned m = 0;
    std::uint32_t r = q;
    while (r % p == 0) {
      r /= p;
      ++m;
    }
    if (r != 1) break;
    return get(p, m);
  }
  throw invalid_input("no field of order " + std::to_string(q));
}

Field::Field(unsigned p, unsigned m, std::vector<unsigned> modulus)
    : p_(p), m_(m), q_(static_cast<std::uint32_t>(ipow(p, m))), modulus_(std::move(modulus)) {
  pw_.resize(m_ + 1);
  pw_[0] = 1;
  for (unsigned i = 1; i <= m_; ++i) pw_[i] = pw_[i - 1] * p_;

  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::uint32_t r = 0;
    std::uint32_t x = a;
    for (unsigned i = 0; i < m_; ++i) {
      unsigned d = x % p_;
      x /= p_;
      r += ((p_ - d) % p_) * pw_[i];
    }
    neg_[a] = r;
  }
  if (q_ <= 512) {
    add_table_.resize(std::size_t(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        std::uint32_t r = 0, x = a, y = b;
        for (unsigned i = 0; i < m_; ++i) {
          r += ((x % p_ + y % p_) % p_) * pw_[i];
          x /= p_;
          y /= p_;
        }
        add_table_[std::size_t(a) * q_ + b] = r;
      }
    }
  }

  // Find a primitive element by direct order computation.
  log_.assign(q_, 0);
  exp_.assign(q_, 0);
  auto to_digits = [&](std::uint32_t a) {
    Digits d(m_, 0);
    for (unsigned i = 0; i < m_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  };
  auto from_digits = [&](const Digits& d) {
    std::uint32_t r = 0;
    for (unsigned i = 0; i < m_; ++i) r += d[i] * pw_[i];
    return r;
  };
  if (q_ == 2) {
    exp_[0] = 1;
    log_[1] = 0;
    return;
  }
  for (std::uint32_t g = 2; g < q_; ++g) {
    Digits gd = to_digits(g);
    Digits cur = to_digits(1);
    std::uint32_t order = 0;
    std::vector<std::uint32_t> powers;
    powers.reserve(q_ - 1);
    do {
      powers.push_back(from_digits(cur));
      cur = poly_mulmod(cur, gd, modulus_, p_);
      ++order;
    } while (from_digits(cur) != 1 && order < q_);
    if (order == q_ - 1) {
      for (std::uint32_t k = 0; k < q_ - 1; ++k) {
        exp_[k] = powers[k];
        log_[powers[k]] = k;
      }
      return;
    }
  }
  throw invariant_violation("no primitive element found");
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
  if (m_ == 1) {
    std::uint32_t r = a + b;
    return r >= p_ ? r - p_ : r;
  }
  std::uint32_t r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * pw_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw division_by_zero();
  std::uint32_t e = log_[a] == 0 ? 0 : (q_ - 1) - log_[a];
  return exp_[e];
}

std::uint32_t Field::pow(std::uint32_t a, long long k) const {
  if (k == 0) return 1;
  if (a == 0) {
    if (k < 0) throw division_by_zero();
    return 0;
  }
  long long n = q_ - 1;
  long long e = (static_cast<long long>(log_[a]) * (k % n)) % n;
  if (e < 0) e += n;
  return exp_[e];
}

Fq Field::gen() const {
  if (m_ == 1) return from_int(static_cast<long long>(p_) - static_cast<long long>(modulus_[0]));
  return {this, pw_[1]};
}

Fq Field::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return {this, static_cast<std::uint32_t>(r)};
}

Fq Field::from_coeffs(const std::vector<unsigned>& c) const {
  if (c.size() != m_) throw invalid_input("coefficient vector length differs from extension degree");
  std::uint32_t r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    if (c[i] >= p_) throw invalid_input("coefficient out of range");
    r += c[i] * pw_[i];
  }
  return {this, r};
}

std::vector<unsigned> Field::coeffs(Fq x) const {
  std::vector<unsigned> d(m_, 0);
  std::uint32_t a = x.v;
  for (unsigned i = 0; i < m_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

std::string Field::to_string(Fq x) const {
  if (in_prime_field(x)) return std::to_string(x.v);
  std::ostringstream os;
  os << '[';
  auto d = coeffs(x);
  for (unsigned i = 0; i < m_; ++i) {
    if (i) os << ',';
    os << d[i];
  }
  os << ']';
  return os.str();
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q_ << " (p=" << p_ << ", m=" << m_ << ", modulus=[";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) os << ',';
    os << modulus_[i];
  }
  os << "])";
  return os.str();
}

namespace {
const Field* common(const Fq& a, const Fq& b) {
  if (a.field != b.field) throw invariant_violation("mixed-field arithmetic");
  return a.field;
}
}  // namespace

bool Fq::is_one() const { return v == 1; }
Fq Fq::operator+(Fq o) const { return {common(*this, o), field->add(v, o.v)}; }
Fq Fq::operator-(Fq o) const { return {common(*this, o), field->sub(v, o.v)}; }
Fq Fq::operator*(Fq o) const { return {common(*this, o), field->mul(v, o.v)}; }
Fq Fq::operator/(Fq o) const { return {common(*this, o), field->mul(v, field->inv(o.v))}; }
Fq Fq::operator-() const { return {field, field->neg(v)}; }
Fq Fq::inv() const { return {field, field->inv(v)}; }
Fq Fq::pow(long long k) const { return {field, field->pow(v, k)}; }
Fq Fq::frobenius() const { return pow(field->p()); }
std::string Fq::to_string() const { return field ? field->to_string(*this) : "0"; }

Embedding::Embedding(const Field* from, const Field* to) : from_(from), to_(to) {
  if (from->p() != to->p() || to->m() % from->m() != 0) {
    throw invalid_input("no embedding from " + from->describe() + " into " + to->describe());
  }
  map_.resize(from->q());
  if (from == to) {
    for (std::uint32_t i = 0; i < from->q(); ++i) map_[i] = i;
    return;
  }
  const auto& mod = from->modulus();
  std::uint32_t root = 0;
  bool found = false;
  for (std::uint32_t r = 0; r < to->q() && !found; ++r) {
    std::uint32_t acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) {
      acc = to->add(to->mul(acc, r), to->from_int(mod[i]).v);
    }
    if (acc == 0) {
      root = r;
      found = true;
    }
  }
  if (!found) throw invariant_violation("modulus has no root in extension field");
  for (std::uint32_t i = 0; i < from->q(); ++i) {
    auto c = from->coeffs(from->element(i));
    std::uint32_t acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) {
      acc = to->add(to->mul(acc, root), to->from_int(c[k]).v);
    }
    map_[i] = acc;
  }
}

Fq Embedding::operator()(Fq x) const {
  if (x.field != from_) throw invariant_violation("embedding applied to foreign element");
  return {to_, map_[x.v]};
}

CoefficientMap::CoefficientMap(const Field* from, const Field* to) : to_(to) {
  if (from->p() != to->p()) {
    throw invalid_input("characteristics differ: " + from->describe() + " vs " + to->describe());
  }
  if (to->m() % from->m() == 0) emb_.emplace(from, to);
}

Fq CoefficientMap::operator()(Fq x) const {
  if (emb_) return (*emb_)(x);
  if (!x.field->in_prime_field(x)) {
    throw invalid_input("coefficient " + x.to_string() + " does not lie in a subfield of " + to_->describe());
  }
  return to_->element(x.v);
}

}  // namespace brep
