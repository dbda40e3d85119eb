#include "brep/classify.hpp"

#include <map>
#include <sstream>

#include "brep/linalg.hpp"

namespace brep {

std::string CaseLabel::to_string() const {
  std::ostringstream os;
  os << tag;
  if (c1) os << " c1=" << c1->to_string();
  if (c2) os << " c2=" << c2->to_string();
  if (lambda) os << " lambda=" << lambda->to_string();
  if (e1) os << " e1=" << *e1;
  if (e2) os << " e2=" << *e2;
  return os.str();
}

std::vector<int> check_block_structure(const WeightTuple& w, const Mat3<UPoly>& u) {
  std::vector<int> runs;
  std::vector<int> block(3);
  for (int i = 0; i < 3; ++i) {
    if (i == 0 || w[i] != w[i - 1]) runs.push_back(0);
    ++runs.back();
    block[i] = static_cast<int>(runs.size()) - 1;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const UPoly& e = u(i, j);
      if (block[i] > block[j] && !e.is_zero()) {
        throw invariant_violation("unipotent part has a nonzero entry below the diagonal blocks");
      }
      if (block[i] == block[j]) {
        bool want_one = i == j;
        bool ok = want_one ? (e.size() == 1 && e.is_constant() && e.constant_term().is_one()) : e.is_zero();
        if (!ok) throw invariant_violation("diagonal block of the unipotent part is not the identity");
      }
    }
  }
  return runs;
}

namespace {

struct Entry {
  bool zero = true;
  Fq c;
  int e = 0;
};

Entry read_entry(const UPoly& a, const char* name) {
  Entry r;
  if (a.is_zero()) return r;
  auto m = as_p_monomial(a);
  if (!m) throw invariant_violation(std::string("entry ") + name + " is not a p-monomial: " + a.to_string());
  r.zero = false;
  r.c = m->c;
  r.e = m->e;
  return r;
}

void need(bool cond, const std::string& what) {
  if (!cond) throw invariant_violation("case analysis: " + what);
}

char letter(bool c1, bool c2) {
  if (!c1 && !c2) return 'a';
  if (c1 && !c2) return 'b';
  if (!c1 && c2) return 'c';
  return 'd';
}

}  // namespace

CaseLabel analyze_case(const WeightTuple& w, const Mat3<UPoly>& u, const Field* f) {
  const unsigned p = f->p();
  auto q = [&](int e) { return ipow_ll(p, e); };
  const int pat = weight_pattern(w);
  CaseLabel L;
  if (pat == 4) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        need(u(i, j) == (i == j ? UPoly::one(f) : UPoly(f)), "zero weights force a trivial unipotent part");
      }
    }
    L.tag = "4";
    return L;
  }
  Entry a12 = read_entry(u(0, 1), "(1,2)");
  Entry a23 = read_entry(u(1, 2), "(2,3)");

  auto fill = [&](const std::string& prefix, const Entry& x1, const Entry& x2) {
    L.tag = prefix + "." + letter(!x1.zero, !x2.zero);
    if (!x1.zero) {
      L.c1 = x1.c;
      L.e1 = x1.e;
    }
    if (!x2.zero) {
      L.c2 = x2.c;
      L.e2 = x2.e;
    }
  };

  if (pat == 1) {
    if (!a12.zero && !a23.zero) {
      need(p >= 3, "both off-diagonal entries nonzero needs p >= 3");
      need(a12.e == a23.e, "(1,2) and (2,3) entries have different degrees");
      L.tag = "1.1";
      L.c1 = a12.c;
      L.e1 = a12.e;
      L.lambda = a23.c / a12.c;
      Fq half = f->from_int(2).inv();
      UPoly expect = UPoly::monomial(half * *L.lambda * a12.c * a12.c, {static_cast<int>(2 * q(a12.e))});
      need(u(0, 2) == expect, "(1,3) entry differs from (lambda/2) c1^2 t^(2p^e1)");
      need(w == WeightTuple{int(2 * q(a12.e)), 0, int(-2 * q(a12.e))}, "weights must be (2p^e1, 0, -2p^e1)");
      return L;
    }
  }
  // Outside case 1.1 the (1,3) entry is itself a p-monomial.
  Entry a13 = read_entry(u(0, 2), "(1,3)");
  if (pat == 1) {
    if (a23.zero) {
      fill("1.2", a12, a13);
      if (L.c1) need(w[0] - w[1] == 2 * q(*L.e1), "l1 - l2 = 2p^e1");
      if (L.c2) need(w[0] - w[2] == 2 * q(*L.e2), "l1 - l3 = 2p^e2");
    } else {
      fill("1.3", a23, a13);
      if (L.c1) need(w[1] - w[2] == 2 * q(*L.e1), "l2 - l3 = 2p^e1");
      if (L.c2) need(w[0] - w[2] == 2 * q(*L.e2), "l1 - l3 = 2p^e2");
    }
    if (L.c1 && L.c2) need(*L.e2 > *L.e1, "e2 > e1");
    return L;
  }
  if (pat == 2) {
    need(a12.zero, "equal top weights force a zero (1,2) entry");
    fill("2", a23, a13);
    if (L.c1) need(w[1] - w[2] == 2 * q(*L.e1), "l2 - l3 = 2p^e1");
    if (L.c2) need(w[0] - w[2] == 2 * q(*L.e2), "l1 - l3 = 2p^e2");
    return L;
  }
  need(a23.zero, "equal bottom weights force a zero (2,3) entry");
  fill("3", a12, a13);
  if (L.c1) need(w[0] - w[1] == 2 * q(*L.e1), "l1 - l2 = 2p^e1");
  if (L.c2) need(w[0] - w[2] == 2 * q(*L.e2), "l1 - l3 = 2p^e2");
  return L;
}

FMat case_conjugator(const CaseLabel& c, const Field* f) {
  const Fq one = f->one(), zero = f->zero();
  const std::string& t = c.tag;
  auto c1 = [&] { return *c.c1; };
  auto c2 = [&] { return *c.c2; };
  if (t == "1.1") return diag(one, c1().inv(), (*c.lambda * c1() * c1()).inv());
  if (t == "1.2.b") return diag(one, c1().inv(), one);
  if (t == "1.2.c") return diag(one, one, c2().inv());
  if (t == "1.2.d") return diag(one, c1().inv(), c2().inv());
  if (t == "1.3.b") return diag(one, c1(), one);
  if (t == "1.3.c") return diag(c2(), one, one);
  if (t == "1.3.d") return diag(c2(), c1(), one);
  if (t == "2.b") return diag(one, one, c1().inv());
  if (t == "2.c") {
    FMat P = diag(zero, zero, c2().inv());
    P(0, 1) = one;
    P(1, 0) = one;
    return P;
  }
  if (t == "2.d") {
    FMat P = diag(c2(), c1(), one);
    P(0, 1) = c2();
    return P;
  }
  if (t == "3.b") return diag(one, c1().inv(), one);
  if (t == "3.c") {
    FMat P = diag(one, zero, zero);
    P(1, 2) = one;
    P(2, 1) = c2().inv();
    return P;
  }
  if (t == "3.d") {
    FMat P = diag(one, c1().inv(), c2().inv());
    P(1, 2) = -c1().inv();
    return P;
  }
  return identity(f);
}

CanonicalForm case_form(const CaseLabel& c, const WeightTuple& w, unsigned p) {
  const std::string& t = c.tag;
  if (t == "1.1") return CanonicalForm::make_I(p, *c.e1);
  if (t == "1.2.a" || t == "1.3.a") return CanonicalForm::make_II(w);
  if (t == "1.2.b") return CanonicalForm::make_III(p, w, *c.e1);
  if (t == "1.2.c" || t == "1.3.c") return CanonicalForm::make_IV(p, w, *c.e2);
  if (t == "1.2.d") return CanonicalForm::make_V(p, *c.e1, *c.e2);
  if (t == "1.3.b") return CanonicalForm::make_VI(p, w, *c.e1);
  if (t == "1.3.d") return CanonicalForm::make_VII(p, *c.e1, *c.e2);
  if (t == "2.a") return CanonicalForm::make_VIII(w[0]);
  if (t == "2.b" || t == "2.d") return CanonicalForm::make_IX(p, *c.e1);
  if (t == "2.c") return CanonicalForm::make_IX(p, *c.e2);
  if (t == "3.a") return CanonicalForm::make_X(w[0]);
  if (t == "3.b" || t == "3.d") return CanonicalForm::make_XI(p, *c.e1);
  if (t == "3.c") return CanonicalForm::make_XI(p, *c.e2);
  if (t == "4") return CanonicalForm::make_XII();
  throw invariant_violation("unknown case " + t);
}

namespace {

bool is_sorted_diagonal(const GmRep& h, WeightTuple* w) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const BiLaurent& e = h.m(i, j);
      if (i != j) {
        if (!e.is_zero()) return false;
        continue;
      }
      if (e.size() != 1) return false;
      const auto& [k, c] = *e.terms().begin();
      if (!c.is_one() || k[0] != 0) return false;
      (*w)[i] = k[1];
    }
  }
  return (*w)[0] >= (*w)[1] && (*w)[1] >= (*w)[2];
}

}  // namespace

ClassificationReport normalize_to_canonical(const BorelRep& phi) {
  HomVerdict v = verify_borel_homomorphism(phi);
  if (!v.ok) throw not_a_homomorphism(v.reason);
  const Field* f = phi.field();

  auto [h, u] = restrict_components(phi);
  Diagonalization D = diagonalize_gm(h);
  BorelRep phi1 = conjugate(phi, D.P, false);
  auto [h1, u1] = restrict_components(phi1);
  WeightTuple w{};
  if (!is_sorted_diagonal(h1, &w) || w != D.weights) {
    throw invariant_violation("torus part is not diagonal after diagonalization");
  }
  check_block_structure(w, u1.m);
  CaseLabel L = analyze_case(w, u1.m, f);
  FMat P1 = case_conjugator(L, f);
  CanonicalForm F = case_form(L, w, f->p());
  BorelRep star = conjugate(phi1, P1, false);
  BorelRep expect = instantiate(F, f);
  if (!(star == expect)) {
    throw invariant_violation("normalized representation differs from the " + F.tag_name() + " instance");
  }
  FMat P = D.P * P1;
  if (!(conjugate(phi, P, false) == expect)) {
    throw invariant_violation("total conjugator does not intertwine");
  }
  ClassificationReport r{L, F, P, expect, std::nullopt, std::nullopt};
  if (weight_pattern(F.weights) != 4) {
    auto [d, dp] = weight_space_dims(expect);
    r.d = d;
    r.d_prime = dp;
  }
  return r;
}

std::pair<std::vector<int>, std::vector<int>> weight_space_dims(const BorelRep& phi) {
  const Field* f = phi.field();
  auto [h, u] = restrict_components(phi);
  WeightTuple w{};
  if (!is_sorted_diagonal(h, &w)) throw invalid_input("weight_space_dims needs a diagonal, sorted torus part");
  const int pat = weight_pattern(w);
  std::vector<int> ls;
  if (pat == 1) ls = {w[0], w[1], w[2]};
  if (pat == 2) ls = {w[0], w[2]};
  if (pat == 3) ls = {w[0], w[1]};
  if (pat == 4) throw invalid_input("weight_space_dims is undefined for the all-zero weight pattern");

  auto dims = [&](int l, bool rows) {
    // M = phi - z^l I; columns: M v = 0, rows: v M = 0.
    Mat3<BiLaurent> M = phi.entries();
    for (int i = 0; i < 3; ++i) M(i, i) -= BiLaurent::monomial(f->one(), {0, l});
    FMatrix A(f, 0, 3);
    for (int outer = 0; outer < 3; ++outer) {
      std::map<BiLaurent::Key, std::vector<std::uint32_t>> eqs;
      for (int inner = 0; inner < 3; ++inner) {
        const BiLaurent& e = rows ? M(inner, outer) : M(outer, inner);
        for (const auto& [k, c] : e.terms()) {
          auto& row = eqs[k];
          row.resize(3, 0);
          row[inner] = c.v;
        }
      }
      for (const auto& [k, row] : eqs) A.append_row(row);
    }
    return 3 - static_cast<int>(rank(A));
  };
  std::vector<int> d, dp;
  for (int l : ls) {
    d.push_back(dims(l, false));
    dp.push_back(dims(l, true));
  }
  return {d, dp};
}

EquivalenceResult test_equivalence(const BorelRep& phi1, const BorelRep& phi2) {
  if (phi1.field() != phi2.field()) throw invalid_input("representations are over different fields");
  ClassificationReport r1 = normalize_to_canonical(phi1);
  ClassificationReport r2 = normalize_to_canonical(phi2);
  EquivalenceResult res;
  res.form1 = r1.form;
  res.form2 = r2.form;
  res.equivalent = r1.form == r2.form;
  if (res.equivalent) {
    FMat Q = r1.conjugator * inverse(r2.conjugator);
    if (!(conjugate(phi1, Q, false) == phi2)) throw invariant_violation("equivalence conjugator does not intertwine");
    res.conjugator = Q;
  }
  return res;
}

}  // namespace brep
