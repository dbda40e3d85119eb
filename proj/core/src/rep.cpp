#include "brep/rep.hpp"

#include <cstdlib>

namespace brep {

BorelRep BorelRep::make(const Field* f, RepMatrix m) {
  BorelRep r(f, std::move(m));
  HomVerdict v = verify_borel_homomorphism(r);
  if (!v.ok) throw not_a_homomorphism(v.reason);
  return r;
}

BorelRep BorelRep::make_unchecked(const Field* f, RepMatrix m) { return BorelRep(f, std::move(m)); }

namespace {
std::string entry_name(int i, int j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }
}  // namespace

HomVerdict verify_borel_homomorphism(const BorelRep& phi) {
  const Field* f = phi.field();
  HomVerdict v;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const BiLaurent& e = phi(i, j);
      if (e.field() && e.field() != f) {
        v.ok = false;
        v.row = i;
        v.col = j;
        v.reason = "entry " + entry_name(i, j) + " has coefficients in a different field";
        return v;
      }
      for (const auto& [k, c] : e.terms()) {
        if (k[0] < 0) {
          v.ok = false;
          v.row = i;
          v.col = j;
          v.monomial = BiLaurent::monomial_string(k, c);
          v.reason = "entry " + entry_name(i, j) + " has a negative power of t";
          return v;
        }
      }
    }
  }
  // (a) phi(0, 1) = I
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Fq val = phi(i, j).is_zero() ? f->zero() : phi(i, j).eval({f->zero(), f->one()});
      if (val != (i == j ? f->one() : f->zero())) {
        v.ok = false;
        v.row = i;
        v.col = j;
        v.reason = "phi(0,1) differs from the identity at entry " + entry_name(i, j);
        return v;
      }
    }
  }
  // (b) phi(t1, z1) phi(t2, z2) = phi(t1 + z1^2 t2, z1 z2)
  Mat3<MultiLaurent> a, b;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      a(i, j) = lift_first(phi(i, j));
      b(i, j) = lift_second(phi(i, j));
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      MultiLaurent lhs(f);
      for (int k = 0; k < 3; ++k) lhs += a(i, k) * b(k, j);
      MultiLaurent diff = lhs - substitute_group_law(phi(i, j));
      if (!diff.is_zero()) {
        v.ok = false;
        v.row = i;
        v.col = j;
        const auto& [key, c] = *diff.terms().begin();
        v.monomial = MultiLaurent::monomial_string(key, c);
        v.reason = "product law fails at entry " + entry_name(i, j) + " (residual term " + v.monomial + ")";
        return v;
      }
    }
  }
  // (c) det = 1
  BiLaurent d = det3(phi.entries());
  if (d != BiLaurent::one(f)) {
    v.ok = false;
    v.reason = "determinant is " + d.to_string() + ", not 1";
    return v;
  }
  return v;
}

std::pair<GmRep, GaRep> restrict_components(const BorelRep& phi) {
  GmRep h{phi.field(), {}};
  GaRep u{phi.field(), {}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      h.m(i, j) = set_t_zero(phi(i, j));
      u.m(i, j) = set_z_one(phi(i, j));
      if (!h.m(i, j).field()) h.m(i, j) = BiLaurent(phi.field());
      if (!u.m(i, j).field()) u.m(i, j) = UPoly(phi.field());
    }
  }
  return {h, u};
}

BorelRep conjugate(const BorelRep& phi, const FMat& P, bool checked) {
  RepMatrix m = inverse(P) * phi.entries() * P;
  return checked ? BorelRep::make(phi.field(), std::move(m)) : BorelRep::make_unchecked(phi.field(), std::move(m));
}

RepMatrix compose_u_h(const Mat3<UPoly>& u, const std::array<int, 3>& w, const Field* f) {
  RepMatrix r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      BiLaurent e(f);
      for (const auto& [k, c] : u(i, j).terms()) e.add_term({k[0], w[j]}, c);
      r(i, j) = e;
    }
  }
  return r;
}

int max_abs_z_degree(const RepMatrix& m) {
  int r = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (const auto& [k, c] : m(i, j).terms()) r = std::max(r, std::abs(k[1]));
    }
  }
  return r;
}

int max_t_degree(const RepMatrix& m) {
  int r = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (const auto& [k, c] : m(i, j).terms()) r = std::max(r, k[0]);
    }
  }
  return r;
}

RepMatrix embed_matrix(const RepMatrix& m, const Embedding& emb) {
  return m.map([&](const BiLaurent& e) { return e.map_coeffs(emb.to(), emb); });
}

}  // namespace brep
