#include "brep/ga_fund.hpp"

#include <set>
#include <sstream>

namespace brep {

const Field* GaTriple::field() const {
  for (const UPoly* x : {&a12, &a13, &a23}) {
    if (x->field()) return x->field();
  }
  throw invalid_input("triple has no coefficient field");
}

Mat3<UPoly> GaTriple::matrix() const {
  const Field* f = field();
  Mat3<UPoly> m = poly_identity<UPoly>(f);
  m(0, 1) = a12 + UPoly(f);
  m(0, 2) = a13 + UPoly(f);
  m(1, 2) = a23 + UPoly(f);
  return m;
}

void check_ga_triple(const GaTriple& u) {
  const Field* f = u.field();
  for (const UPoly* x : {&u.a12, &u.a13, &u.a23}) {
    if (x->field() && x->field() != f) throw invalid_input("triple entries live in different fields");
  }
  if (!is_p_polynomial(u.a12)) throw not_a_homomorphism("a12 is not a p-polynomial: " + u.a12.to_string());
  if (!is_p_polynomial(u.a23)) throw not_a_homomorphism("a23 is not a p-polynomial: " + u.a23.to_string());
  // Variables (t, s) stored in the two slots of BiLaurent.
  BiLaurent lhs(f), rhs(f);
  for (const auto& [k, c] : u.a13.terms()) {
    int n = k[0];
    for (int j = 0; j <= n; ++j) {
      unsigned b = binomial_mod(n, j, f->p());
      if (b) lhs.add_term({j, n - j}, c * f->from_int(b));
    }
    lhs.add_term({n, 0}, -c);
    lhs.add_term({0, n}, -c);
  }
  for (const auto& [k1, c1] : u.a12.terms()) {
    for (const auto& [k2, c2] : u.a23.terms()) rhs.add_term({k1[0], k2[0]}, c1 * c2);
  }
  if (lhs != rhs) {
    throw not_a_homomorphism("a13(t+s) - a13(t) - a13(s) differs from a12(t) a23(s)");
  }
}

std::string ga_class_name(GaClass c) {
  switch (c) {
    case GaClass::U3:
      return "U[3]";
    case GaClass::A12:
      return "A(1,2)";
    case GaClass::A21:
      return "A(2,1)";
    case GaClass::Trivial:
      return "trivial";
  }
  return "?";
}

bool GaClassTag::has(GaClass c) const {
  for (const auto& m : matches) {
    if (m.tag == c) return true;
  }
  return false;
}

namespace {

PPoly as_ppoly(const UPoly& x, const Field* f) {
  auto r = is_p_polynomial(x);
  if (!r) throw invariant_violation("expected a p-polynomial: " + x.to_string());
  if (!r->field()) return PPoly(f);
  return *r;
}

}  // namespace

GaClassTag classify_ga(const GaTriple& u) {
  check_ga_triple(u);
  const Field* f = u.field();
  GaClassTag tag;
  if (u.a23.is_zero()) tag.matches.push_back({GaClass::A12, as_ppoly(u.a12, f), as_ppoly(u.a13, f), std::nullopt});
  if (u.a12.is_zero()) tag.matches.push_back({GaClass::A21, as_ppoly(u.a23, f), as_ppoly(u.a13, f), std::nullopt});
  if (u.a12.is_zero() && u.a13.is_zero() && u.a23.is_zero()) {
    tag.matches.push_back({GaClass::Trivial, PPoly(f), PPoly(f), std::nullopt});
  }
  if (f->p() >= 3 && !u.a12.is_zero() && !u.a23.is_zero()) {
    Fq lambda = u.a23.terms().rbegin()->second / u.a12.terms().rbegin()->second;
    if (u.a23 == u.a12 * lambda) {
      UPoly rest = u.a13 - u.a12 * u.a12 * (lambda * f->from_int(2).inv());
      if (is_p_polynomial(rest)) tag.matches.push_back({GaClass::U3, as_ppoly(u.a12, f), as_ppoly(rest, f), lambda});
    }
  }
  if (tag.matches.empty()) throw invariant_violation("valid triple outside every class");
  return tag;
}

namespace {

// x = lo T^q + hi T^{2q}, when the support allows it.
struct Split {
  Fq lo, hi;
};

std::optional<Split> split(const UPoly& x, long long q, const Field* f) {
  Split s{f->zero(), f->zero()};
  for (const auto& [k, c] : x.terms()) {
    if (k[0] == q) {
      s.lo = c;
    } else if (k[0] == 2 * q) {
      s.hi = c;
    } else {
      return std::nullopt;
    }
  }
  return s;
}

Mat3<UPoly> sharp_matrix(const Field* f, const std::string& cond, long long q) {
  Mat3<UPoly> m = poly_identity<UPoly>(f);
  auto T = [&](long long n) { return UPoly::var(f, 0, static_cast<int>(n)); };
  if (cond == "(1.1.a)" || cond == "(1.1.b)" || cond == "(2.2.a)" || cond == "(2.2.b)") {
    m(0, 2) = T(q);
  } else if (cond == "(1.2)") {
    m(0, 1) = T(q);
    m(0, 2) = T(2 * q);
  } else if (cond == "(1.3)") {
    m(0, 2) = T(2 * q);
    m(1, 2) = T(q);
  } else if (cond == "(2.1)") {
    m(0, 1) = T(q);
    m(0, 2) = T(2 * q) * f->from_int(2).inv();
    m(1, 2) = T(q);
  }
  return m;
}

FMat rows(const Field* f, std::array<std::array<Fq, 3>, 3> r) {
  (void)f;
  FMat m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = r[i][j];
  }
  return m;
}

struct Match {
  std::string cond;
  FMat P;
  bool outside = false;
};

// (lambda, nu, 0) T^q -> E13 T^q.
FMat conj_11a(const Field* f, Fq lambda, Fq nu) {
  Fq o = f->one(), z = f->zero();
  if (!nu.is_zero()) return rows(f, {{{o, z, z}, {z, o, z}, {z, -(lambda / nu), nu.inv()}}});
  return rows(f, {{{o, z, z}, {z, z, lambda.inv()}, {z, o, z}}});
}

// (0, nu, lambda) T^q -> E13 T^q.
FMat conj_11b(const Field* f, Fq lambda, Fq nu) {
  Fq o = f->one(), z = f->zero();
  if (!nu.is_zero()) return rows(f, {{{nu, z, z}, {lambda, o, z}, {z, z, o}}});
  return rows(f, {{{z, o, z}, {lambda, z, z}, {z, z, o}}});
}

std::optional<Match> match_at(const GaTriple& u, long long q, const Field* f) {
  auto s12 = split(u.a12, q, f), s13 = split(u.a13, q, f), s23 = split(u.a23, q, f);
  if (!s12 || !s13 || !s23) return std::nullopt;
  const Fq o = f->one(), z = f->zero();
  const bool z12 = u.a12.is_zero(), z23 = u.a23.is_zero();
  const bool single = s12->hi.is_zero() && s13->hi.is_zero() && s23->hi.is_zero();
  if (f->p() == 2) {
    if (z23 && single) return Match{"(1.1.a)", conj_11a(f, s12->lo, s13->lo)};
    if (z12 && single) return Match{"(1.1.b)", conj_11b(f, s23->lo, s13->lo)};
    if (z23) {
      Fq l = s12->lo, mu = s12->hi, nu = s13->lo, xi = s13->hi;
      if ((l * xi - mu * nu).is_zero()) return std::nullopt;
      FMat N = rows(f, {{{l, nu, z}, {mu, xi, z}, {z, z, o}}});
      FMat Ni = inverse(N);
      return Match{"(1.2)", rows(f, {{{o, z, z}, {z, Ni(0, 0), Ni(0, 1)}, {z, Ni(1, 0), Ni(1, 1)}}})};
    }
    if (z12) {
      Fq l = s23->lo, mu = s23->hi, nu = s13->lo, xi = s13->hi;
      if ((l * xi - mu * nu).is_zero()) return std::nullopt;
      return Match{"(1.3)", rows(f, {{{xi, nu, z}, {mu, l, z}, {z, z, o}}})};
    }
    return std::nullopt;
  }
  if (!z12 && !z23) {
    // (c T^q, lambda c^2/2 T^{2q} + nu T^q, lambda c T^q)
    if (!s12->hi.is_zero() || !s23->hi.is_zero()) return std::nullopt;
    Fq c = s12->lo, lambda = s23->lo / c;
    if (s13->hi != lambda * c * c * f->from_int(2).inv()) return std::nullopt;
    Fq nu = s13->lo;
    return Match{"(2.1)", rows(f, {{{lambda * c * c, nu, z}, {z, lambda * c, z}, {z, z, o}}}), !nu.is_zero()};
  }
  if (!single) return std::nullopt;
  if (z23) return Match{"(2.2.a)", conj_11a(f, s12->lo, s13->lo)};
  return Match{"(2.2.b)", conj_11b(f, s23->lo, s13->lo)};
}

CanonicalForm borel_form_for(const std::string& cond, unsigned p, int e) {
  int q = static_cast<int>(ipow_ll(p, e));
  if (cond == "(2.1)") return CanonicalForm::make_I(p, e);
  if (cond == "(1.2)") return CanonicalForm::make_V(p, e, e + 1);
  if (cond == "(1.3)") return CanonicalForm::make_VII(p, e, e + 1);
  if (cond == "(1.4)" || cond == "(2.3)") return CanonicalForm::make_XII();
  return CanonicalForm::make_IV(p, {q, 0, -q}, e);
}

}  // namespace

GaVerdict decide_ga_fundamental(const GaTriple& u) {
  check_ga_triple(u);
  const Field* f = u.field();
  const unsigned p = f->p();
  const Mat3<UPoly> U = u.matrix();
  GaVerdict v;
  v.conjugator = identity(f);
  v.u_sharp = poly_identity<UPoly>(f);

  std::optional<Match> found;
  int e_found = -1;
  if (u.a12.is_zero() && u.a13.is_zero() && u.a23.is_zero()) {
    found = Match{p == 2 ? "(1.4)" : "(2.3)", identity(f)};
  } else {
    // Every branch pins p^e to an exponent of the support or to half of one.
    std::set<int> candidates;
    for (const UPoly* x : {&u.a12, &u.a13, &u.a23}) {
      for (const auto& [k, c] : x->terms()) {
        if (auto e = log_p(k[0], p)) candidates.insert(*e);
        if (k[0] % 2 == 0) {
          if (auto e = log_p(k[0] / 2, p)) candidates.insert(*e);
        }
      }
    }
    for (int e : candidates) {
      found = match_at(u, ipow_ll(p, e), f);
      if (found) {
        e_found = e;
        break;
      }
    }
  }
  if (!found) return v;

  v.fundamental = true;
  v.condition = found->cond;
  v.outside_listed_conditions = found->outside;
  if (e_found >= 0) v.e = e_found;
  v.conjugator = found->P;
  v.u_sharp = sharp_matrix(f, found->cond, e_found >= 0 ? ipow_ll(p, e_found) : 1);
  Mat3<UPoly> back = inverse(found->P) * U * found->P;
  if (back != v.u_sharp) throw invariant_violation("conjugator for " + found->cond + " does not reach the normal form");

  CanonicalForm F = borel_form_for(found->cond, p, std::max(e_found, 0));
  v.borel_form = F;
  Sl2Formula star = build_psi(F, f);
  if (upper_unipotent_part(star) != v.u_sharp) {
    throw invariant_violation("extension of " + F.to_string() + " does not restrict to the normal form of " + found->cond);
  }
  Sl2Formula psi = conjugate_psi(star, found->P);
  if (upper_unipotent_part(psi) != U) throw invariant_violation("transported extension does not restrict to the input");
  v.psi = psi;
  return v;
}

int ga_fundamental_class_count(unsigned p, int max_e) {
  if (max_e < 0) return 1;
  const Field* f = Field::get(p, 1);
  std::vector<CanonicalForm> sharp;
  for (int e = 0; e <= max_e; ++e) {
    int q = static_cast<int>(ipow_ll(p, e));
    sharp.push_back(CanonicalForm::make_IV(p, {q, 0, -q}, e));
    if (p >= 3) sharp.push_back(CanonicalForm::make_I(p, e));
    if (p == 2) {
      sharp.push_back(CanonicalForm::make_V(p, e, e + 1));
      sharp.push_back(CanonicalForm::make_VII(p, e, e + 1));
    }
  }
  sharp.push_back(CanonicalForm::make_XII());
  std::set<std::string> restrictions;
  for (const auto& F : sharp) {
    if (!lambda_sharp_membership(F, p).eligible) throw invariant_violation(F.to_string() + " is not eligible");
    restrictions.insert(to_string(canonical_u(F, f)));
  }
  return static_cast<int>(restrictions.size());
}

Catalog enumerate_classes(unsigned p, unsigned m, int max_e, int max_weight) {
  if (max_e < 0 || max_weight < 0) throw invalid_input("bounds must be nonnegative");
  const Field* f = Field::get(p, m);
  Catalog c;
  for (const auto& F : enumerate_forms(p, max_e, max_weight)) {
    FundamentalityVerdict v = decide_fundamental(instantiate(F, f));
    c.entries.push_back({F, v.fundamental});
  }
  c.ga_fundamental_classes = ga_fundamental_class_count(p, max_e);
  return c;
}

std::string catalog_tsv(const Catalog& c) {
  std::ostringstream os;
  for (const auto& e : c.entries) {
    os << e.form.tag_name() << '\t' << e.form.payload_string() << '\t' << (e.fundamental ? "fundamental" : "not") << '\n';
  }
  return os.str();
}

}  // namespace brep
