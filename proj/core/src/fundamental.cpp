#include "brep/fundamental.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "brep/linalg.hpp"

namespace brep {

namespace {

bool symmetric_weights(const std::array<int, 3>& w) {
  std::array<int, 3> a = w, b{-w[0], -w[1], -w[2]};
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

Eligibility lambda_sharp_membership(const CanonicalForm& F, unsigned p) {
  if (!symmetric_weights(F.weights)) {
    return {false, "weight multiset is not symmetric under negation"};
  }
  switch (F.tag) {
    case FormTag::I:
      if (p >= 3) return {true, "(I)* with p >= 3"};
      return {false, "(I)* requires p >= 3"};
    case FormTag::IV:
      return {true, "(IV)* with weights (p^e2, 0, -p^e2)"};
    case FormTag::V:
    case FormTag::VII:
      // symmetric weights force the middle weight to vanish, i.e. p = 2, e2 = e1 + 1
      if (p == 2 && F.e2 == F.e1 + 1) return {true, F.tag_name() + " with p = 2 and e2 = e1 + 1"};
      return {false, F.tag_name() + " needs p = 2 and e2 = e1 + 1"};
    case FormTag::XII:
      return {true, "trivial representation"};
    case FormTag::II:
      return {false, "(II)* has trivial unipotent part but nontrivial torus part"};
    case FormTag::III:
    case FormTag::VI:
      return {false, F.tag_name() + " never extends to SL(2)"};
    default:
      return {false, F.tag_name() + " is excluded by its weight pattern"};
  }
}

Sl2Formula build_psi(const CanonicalForm& F, const Field* f) {
  F.validate(f->p());
  Eligibility el = lambda_sharp_membership(F, f->p());
  if (!el.eligible) throw invalid_input("no extension formula for " + F.to_string() + ": " + el.reason);
  const Fq one = f->one();
  auto mono = [&](Fq c, int a, int b, int cc, int d) { return AbcdPoly::monomial(c, {a, b, cc, d}); };
  Sl2Formula psi{f, {}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) psi.m(i, j) = AbcdPoly(f);
  }
  const long long p = f->p();
  switch (F.tag) {
    case FormTag::I: {
      int q = static_cast<int>(ipow_ll(p, F.e1));
      Fq two = f->from_int(2), half = two.inv();
      psi.m(0, 0) = mono(one, 2 * q, 0, 0, 0);
      psi.m(0, 1) = mono(one, q, q, 0, 0);
      psi.m(0, 2) = mono(half, 0, 2 * q, 0, 0);
      psi.m(1, 0) = mono(two, q, 0, q, 0);
      psi.m(1, 1) = mono(one, q, 0, 0, q) + mono(one, 0, q, q, 0);
      psi.m(1, 2) = mono(one, 0, q, 0, q);
      psi.m(2, 0) = mono(two, 0, 0, 2 * q, 0);
      psi.m(2, 1) = mono(two, 0, 0, q, q);
      psi.m(2, 2) = mono(one, 0, 0, 0, 2 * q);
      break;
    }
    case FormTag::IV: {
      int q = static_cast<int>(ipow_ll(p, F.e2));
      psi.m(0, 0) = mono(one, q, 0, 0, 0);
      psi.m(0, 2) = mono(one, 0, q, 0, 0);
      psi.m(1, 1) = AbcdPoly::one(f);
      psi.m(2, 0) = mono(one, 0, 0, q, 0);
      psi.m(2, 2) = mono(one, 0, 0, 0, q);
      break;
    }
    case FormTag::V: {
      int q = static_cast<int>(ipow_ll(p, F.e1));
      psi.m(0, 0) = mono(one, 2 * q, 0, 0, 0);
      psi.m(0, 1) = mono(one, q, q, 0, 0);
      psi.m(0, 2) = mono(one, 0, 2 * q, 0, 0);
      psi.m(1, 1) = AbcdPoly::one(f);
      psi.m(2, 0) = mono(one, 0, 0, 2 * q, 0);
      psi.m(2, 1) = mono(one, 0, 0, q, q);
      psi.m(2, 2) = mono(one, 0, 0, 0, 2 * q);
      break;
    }
    case FormTag::VII: {
      int q = static_cast<int>(ipow_ll(p, F.e1));
      psi.m(0, 0) = mono(one, 2 * q, 0, 0, 0);
      psi.m(0, 2) = mono(one, 0, 2 * q, 0, 0);
      psi.m(1, 0) = mono(one, q, 0, q, 0);
      psi.m(1, 1) = AbcdPoly::one(f);
      psi.m(1, 2) = mono(one, 0, q, 0, q);
      psi.m(2, 0) = mono(one, 0, 0, 2 * q, 0);
      psi.m(2, 2) = mono(one, 0, 0, 0, 2 * q);
      break;
    }
    case FormTag::XII:
      for (int i = 0; i < 3; ++i) psi.m(i, i) = AbcdPoly::one(f);
      break;
    default:
      throw invariant_violation("eligible form without a formula");
  }
  return psi;
}

RepMatrix restrict_along_iota(const Sl2Formula& psi) {
  return psi.m.map([&](const AbcdPoly& e) {
    BiLaurent r(psi.field);
    for (const auto& [k, c] : e.terms()) {
      if (k[2] != 0) continue;  // c = 0
      r.add_term({k[1], k[0] - k[1] - k[3]}, c);
    }
    return r;
  });
}

Mat3<UPoly> upper_unipotent_part(const Sl2Formula& psi) {
  return psi.m.map([&](const AbcdPoly& e) {
    UPoly r(psi.field);
    for (const auto& [k, c] : e.terms()) {
      if (k[2] == 0) r.add_term({k[1]}, c);
    }
    return r;
  });
}

Mat3<UPoly> lower_unipotent_part(const Sl2Formula& psi) {
  return psi.m.map([&](const AbcdPoly& e) {
    UPoly r(psi.field);
    for (const auto& [k, c] : e.terms()) {
      if (k[1] == 0) r.add_term({k[2]}, c);
    }
    return r;
  });
}

Sl2Formula conjugate_psi(const Sl2Formula& psi, const FMat& P) {
  Sl2Formula r{psi.field, P * psi.m * inverse(P)};
  return r;
}

// ---------------------------------------------------------------------------
// Functional equation for the lower unipotent part.

namespace {

// Linear form in n unknowns with Laurent coefficients: exponent -> (n+1)
// coefficients, the last one being the constant term.
using Lin = std::map<int, std::vector<std::uint32_t>>;

void lin_add(Lin& acc, int expo, std::size_t slot, std::uint32_t c, std::size_t width, const Field* f) {
  if (c == 0) return;
  auto& row = acc[expo];
  if (row.empty()) row.assign(width, 0);
  row[slot] = f->add(row[slot], c);
}

std::string laurent_in_s(const WLaurent& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    int k = it->first[0];
    Fq c = it->second;
    std::string cs = c.to_string();
    if (k == 0) {
      os << cs;
    } else if (k > 0) {
      if (!c.is_one()) os << cs << '*';
      os << "(1+s)";
      if (k != 1) os << '^' << k;
    } else {
      os << cs << "/(1+s)";
      if (k != -1) os << '^' << -k;
    }
  }
  return os.str();
}

std::optional<int> single_power(const WLaurent& x) {
  if (x.size() != 1 || !x.terms().begin()->second.is_one()) return std::nullopt;
  return x.terms().begin()->first[0];
}

}  // namespace

std::string UMinusCertificate::to_string() const {
  std::ostringstream os;
  os << "entry (" << row << "," << col << "): " << identity << " [degree bound " << degree_bound
     << ", denominators cleared by (1+s)^" << clearing_exponent << "]";
  return os.str();
}

UMinusResult solve_uminus(const BorelRep& phi, int D) {
  if (D < 1) throw invalid_input("degree bound must be at least 1");
  const Field* f = phi.field();
  const std::size_t n = 3 * static_cast<std::size_t>(D);
  const std::size_t width = n + 1;
  auto [h, u] = restrict_components(phi);

  FMat u1;
  Mat3<WLaurent> H, U;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      u1(i, j) = u.m(i, j).is_zero() ? f->zero() : u.m(i, j).eval({f->one()});
      H(i, j) = WLaurent(f);
      U(i, j) = WLaurent(f);
      for (const auto& [k, c] : h.m(i, j).terms()) H(i, j).add_term({k[1]}, c);
      for (const auto& [k, c] : u.m(i, j).terms()) U(i, j).add_term({-k[0]}, c);
    }
  }
  Mat3<WLaurent> B = H * U;

  // (w - 1)^k and (w - 1)^k w^-k for k = 1..D, with w = 1 + s.
  WLaurent wm1 = WLaurent::var(f, 0) - WLaurent::one(f);
  std::vector<WLaurent> P(D + 1), Q(D + 1);
  P[0] = WLaurent::one(f);
  for (int k = 1; k <= D; ++k) {
    P[k] = P[k - 1] * wm1;
    Q[k] = P[k] * WLaurent::var(f, 0, -k);
  }

  // Lower unipotent ansatz at s and at s/(1+s). Unknown slot of
  // (entry e, degree k) is e*D + k-1 with e = 0 (v21), 1 (v31), 2 (v32).
  const int pos[3][2] = {{1, 0}, {2, 0}, {2, 1}};
  Mat3<Lin> L, L2;
  for (int i = 0; i < 3; ++i) {
    lin_add(L(i, i), 0, n, 1, width, f);
    lin_add(L2(i, i), 0, n, 1, width, f);
  }
  for (int e = 0; e < 3; ++e) {
    auto [i, j] = pos[e];
    for (int k = 1; k <= D; ++k) {
      std::size_t slot = e * D + (k - 1);
      for (const auto& [key, c] : P[k].terms()) lin_add(L(i, j), key[0], slot, c.v, width, f);
      for (const auto& [key, c] : Q[k].terms()) lin_add(L2(i, j), key[0], slot, c.v, width, f);
    }
  }

  Mat3<Lin> lhs, rhs;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int m = 0; m < 3; ++m) {
        std::uint32_t s = u1(i, m).v;
        if (s != 0) {
          for (const auto& [expo, row] : L(m, j)) {
            for (std::size_t x = 0; x < width; ++x) lin_add(lhs(i, j), expo, x, f->mul(s, row[x]), width, f);
          }
        }
        for (const auto& [expo, row] : L2(i, m)) {
          for (const auto& [bk, bc] : B(m, j).terms()) {
            for (std::size_t x = 0; x < width; ++x) {
              lin_add(rhs(i, j), expo + bk[0], x, f->mul(bc.v, row[x]), width, f);
            }
          }
        }
      }
    }
  }

  int min_expo = 0;
  Mat3<Lin> diff;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      diff(i, j) = lhs(i, j);
      for (const auto& [expo, row] : rhs(i, j)) {
        for (std::size_t x = 0; x < width; ++x) lin_add(diff(i, j), expo, x, f->neg(row[x]), width, f);
      }
      for (const auto& [expo, row] : lhs(i, j)) min_expo = std::min(min_expo, expo);
      for (const auto& [expo, row] : rhs(i, j)) min_expo = std::min(min_expo, expo);
    }
  }
  const int M = -min_expo;

  auto constant_part = [&](const Lin& x) {
    WLaurent r(f);
    for (const auto& [expo, row] : x) r.add_term({expo}, f->element(row[n]));
    return r;
  };
  auto has_unknowns = [&](const std::vector<std::uint32_t>& row) {
    for (std::size_t x = 0; x < n; ++x) {
      if (row[x] != 0) return true;
    }
    return false;
  };

  const int order[9][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
  UMinusResult res;
  auto make_cert = [&](int i, int j, std::string identity, std::optional<int> power) {
    UMinusCertificate c;
    c.row = i + 1;
    c.col = j + 1;
    c.identity = std::move(identity);
    c.power = power;
    c.degree_bound = D;
    c.clearing_exponent = M;
    res.certificate = c;
    return res;
  };

  // An entry free of unknowns whose two sides differ.
  for (const auto& ij : order) {
    int i = ij[0], j = ij[1];
    bool free = true, contradictory = false;
    for (const auto& [expo, row] : diff(i, j)) {
      if (has_unknowns(row)) free = false;
      if (row[n] != 0) contradictory = true;
    }
    if (free && contradictory) {
      WLaurent l = constant_part(lhs(i, j)), r = constant_part(rhs(i, j));
      std::optional<int> power;
      if (l == WLaurent::one(f)) power = single_power(r);
      if (r == WLaurent::one(f)) power = single_power(l);
      return make_cert(i, j, laurent_in_s(l) + " = " + laurent_in_s(r), power);
    }
  }
  // A single coefficient equation free of unknowns.
  for (const auto& ij : order) {
    int i = ij[0], j = ij[1];
    for (const auto& [expo, row] : diff(i, j)) {
      if (!has_unknowns(row) && row[n] != 0) {
        std::ostringstream os;
        os << "coefficient of (1+s)^" << expo << " reads 0 = " << f->element(row[n]).to_string();
        return make_cert(i, j, os.str(), std::nullopt);
      }
    }
  }

  // Full elimination: A x = -constant.
  FMatrix A(f, 0, width);
  std::vector<std::pair<int, int>> origin_entry;
  std::vector<int> origin_expo;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (const auto& [expo, row] : diff(i, j)) {
        std::vector<std::uint32_t> r(row);
        r[n] = f->neg(r[n]);
        A.append_row(r);
        origin_entry.push_back({i, j});
        origin_expo.push_back(expo);
      }
    }
  }
  SolveResult s = solve_augmented(A);
  if (!s.x) {
    auto [i, j] = origin_entry[*s.bad_row];
    std::ostringstream os;
    os << "no solution of degree <= " << D << ": elimination turns the coefficient of (1+s)^"
       << origin_expo[*s.bad_row] << " into 0 = c with c != 0";
    return make_cert(i, j, os.str(), std::nullopt);
  }
  if (!s.unique) throw invariant_violation("lower unipotent solution is not unique at degree bound " + std::to_string(D));
  UMinus um{UPoly(f), UPoly(f), UPoly(f)};
  UPoly* out[3] = {&um.v21, &um.v31, &um.v32};
  for (int e = 0; e < 3; ++e) {
    for (int k = 1; k <= D; ++k) out[e]->add_term({k}, (*s.x)[e * D + (k - 1)]);
  }
  res.solution = um;
  return res;
}

// ---------------------------------------------------------------------------
// Exhaustive checks over SL(2, F_q).

namespace {

struct Sl2Table {
  const Field* F;
  std::uint32_t q;
  std::vector<std::array<std::uint32_t, 4>> elems;
  std::vector<std::array<std::uint32_t, 9>> images;
  std::vector<std::int32_t> index;  // dense lookup by (a,b,c,d)
  std::unordered_map<std::uint64_t, std::int32_t> sparse_index;

  std::uint64_t code(const std::array<std::uint32_t, 4>& x) const {
    return ((std::uint64_t(x[0]) * q + x[1]) * q + x[2]) * q + x[3];
  }
  std::int32_t find(const std::array<std::uint32_t, 4>& x) const {
    std::uint64_t c = code(x);
    if (!index.empty()) return index[c];
    auto it = sparse_index.find(c);
    return it == sparse_index.end() ? -1 : it->second;
  }
};

const Field* check_field(const Sl2Formula& psi, std::uint32_t q) {
  const Field* F = Field::of_order(q);
  if (F->p() != psi.field->p()) throw invalid_input("field size is not a power of the characteristic");
  return F;
}

Sl2Table build_table(const Sl2Formula& psi, std::uint32_t q) {
  Sl2Table T;
  T.F = check_field(psi, q);
  T.q = q;
  const Field* F = T.F;
  CoefficientMap emb(psi.field, F);
  std::uint64_t q4 = std::uint64_t(q) * q * q * q;
  if (q4 <= (1u << 22)) T.index.assign(q4, -1);
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      for (std::uint32_t c = 0; c < q; ++c) {
        std::uint32_t bc = F->mul(b, c);
        if (a != 0) {
          std::uint32_t d = F->mul(F->add(1, bc), F->inv(a));
          T.elems.push_back({a, b, c, d});
        } else if (F->neg(bc) == 1) {
          for (std::uint32_t d = 0; d < q; ++d) T.elems.push_back({a, b, c, d});
        }
      }
    }
  }
  for (std::size_t i = 0; i < T.elems.size(); ++i) {
    if (!T.index.empty()) {
      T.index[T.code(T.elems[i])] = static_cast<std::int32_t>(i);
    } else {
      T.sparse_index[T.code(T.elems[i])] = static_cast<std::int32_t>(i);
    }
  }
  // Pre-embedded terms of each entry.
  struct Term {
    std::uint32_t c;
    std::array<int, 4> k;
  };
  std::array<std::vector<Term>, 9> terms;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (const auto& [k, c] : psi.m(i, j).terms()) terms[i * 3 + j].push_back({emb(c).v, k});
    }
  }
  T.images.resize(T.elems.size());
  for (std::size_t g = 0; g < T.elems.size(); ++g) {
    const auto& x = T.elems[g];
    for (int e = 0; e < 9; ++e) {
      std::uint32_t acc = 0;
      for (const Term& t : terms[e]) {
        std::uint32_t v = t.c;
        for (int s = 0; s < 4 && v != 0; ++s) {
          if (t.k[s] != 0) v = F->mul(v, F->pow(x[s], t.k[s]));
        }
        acc = F->add(acc, v);
      }
      T.images[g][e] = acc;
    }
  }
  return T;
}

std::array<std::uint32_t, 9> mul3(const Field* F, const std::array<std::uint32_t, 9>& x, const std::array<std::uint32_t, 9>& y) {
  std::array<std::uint32_t, 9> r{};
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      std::uint32_t a = x[i * 3 + k];
      if (a == 0) continue;
      for (int j = 0; j < 3; ++j) {
        std::uint32_t b = y[k * 3 + j];
        if (b != 0) r[i * 3 + j] = F->add(r[i * 3 + j], F->mul(a, b));
      }
    }
  }
  return r;
}

std::string elem_string(const Field* F, const std::array<std::uint32_t, 4>& x) {
  std::ostringstream os;
  os << "[" << F->element(x[0]).to_string() << "," << F->element(x[1]).to_string() << ";"
     << F->element(x[2]).to_string() << "," << F->element(x[3]).to_string() << "]";
  return os.str();
}

std::uint32_t det9(const Field* F, const std::array<std::uint32_t, 9>& m) {
  auto M = [&](int i, int j) { return m[i * 3 + j]; };
  auto minor = [&](int a, int b, int c, int d) { return F->sub(F->mul(M(1, a), M(2, b)), F->mul(M(1, c), M(2, d))); };
  std::uint32_t r = F->mul(M(0, 0), minor(1, 2, 2, 1));
  r = F->sub(r, F->mul(M(0, 1), minor(0, 2, 2, 0)));
  r = F->add(r, F->mul(M(0, 2), minor(0, 1, 1, 0)));
  return r;
}

}  // namespace

Sl2HomVerdict verify_sl2_hom(const Sl2Formula& psi, std::uint32_t q, Sl2CheckMode mode) {
  Sl2Table T = build_table(psi, q);
  const Field* F = T.F;
  Sl2HomVerdict v;
  v.group_order = T.elems.size();
  for (std::size_t g = 0; g < T.elems.size(); ++g) {
    if (det9(F, T.images[g]) != 1) {
      v.ok = false;
      v.witness = "det psi(A) != 1 at A = " + elem_string(F, T.elems[g]);
      return v;
    }
  }
  std::int32_t id = T.find({1, 0, 0, 1});
  const std::array<std::uint32_t, 9> I{1, 0, 0, 0, 1, 0, 0, 0, 1};
  if (T.images[id] != I) {
    v.ok = false;
    v.witness = "psi(I) != I";
    return v;
  }
  std::vector<std::size_t> right;
  if (mode == Sl2CheckMode::AllPairs) {
    right.resize(T.elems.size());
    for (std::size_t i = 0; i < right.size(); ++i) right[i] = i;
  } else {
    // E12(beta), E21(beta) for beta over an additive basis of F_q / F_p.
    std::uint32_t beta = 1;
    for (unsigned i = 0; i < F->m(); ++i, beta *= F->p()) {
      right.push_back(T.find({1, beta, 0, 1}));
      right.push_back(T.find({1, 0, beta, 1}));
    }
  }
  for (std::size_t a = 0; a < T.elems.size(); ++a) {
    const auto& A = T.elems[a];
    for (std::size_t b : right) {
      const auto& Bm = T.elems[b];
      std::array<std::uint32_t, 4> AB{F->add(F->mul(A[0], Bm[0]), F->mul(A[1], Bm[2])),
                                      F->add(F->mul(A[0], Bm[1]), F->mul(A[1], Bm[3])),
                                      F->add(F->mul(A[2], Bm[0]), F->mul(A[3], Bm[2])),
                                      F->add(F->mul(A[2], Bm[1]), F->mul(A[3], Bm[3]))};
      std::int32_t ab = T.find(AB);
      ++v.products_checked;
      if (mul3(F, T.images[a], T.images[b]) != T.images[ab]) {
        v.ok = false;
        v.witness = "psi(A)psi(B) != psi(AB) at A = " + elem_string(F, A) + ", B = " + elem_string(F, Bm);
        return v;
      }
    }
  }
  return v;
}

bool check_psi_uniqueness(const Sl2Formula& psi1, const Sl2Formula& psi2, std::uint32_t q) {
  if (psi1.field->p() != psi2.field->p()) throw invalid_input("formulas have different characteristics");
  for (const Sl2Formula* psi : {&psi1, &psi2}) {
    Sl2HomVerdict v = verify_sl2_hom(*psi, q);
    if (!v.ok) throw invalid_input("not a homomorphism over F_" + std::to_string(q) + ": " + v.witness);
  }
  Sl2Table T1 = build_table(psi1, q), T2 = build_table(psi2, q);
  const std::array<std::uint32_t, 9> I{1, 0, 0, 0, 1, 0, 0, 0, 1};
  bool agree_all = true, agree_gen = true;
  for (std::size_t g = 0; g < T1.elems.size(); ++g) {
    const auto& x = T1.elems[g];
    bool same = T1.images[g] == T2.images[g];
    bool borel = x[2] == 0;
    bool lower = x[0] == 1 && x[1] == 0 && x[3] == 1;
    if (!same) {
      agree_all = false;
      if (borel || lower) agree_gen = false;
    }
  }
  if (agree_gen && !agree_all) {
    throw invariant_violation("formulas agree on the Borel and lower unipotent subgroups but differ elsewhere");
  }
  // Trivial upper unipotent part forces trivial torus and lower parts.
  for (const Sl2Table* T : {&T1, &T2}) {
    bool upper_trivial = true;
    for (std::size_t g = 0; g < T->elems.size(); ++g) {
      const auto& x = T->elems[g];
      if (x[0] == 1 && x[2] == 0 && x[3] == 1 && T->images[g] != I) upper_trivial = false;
    }
    if (!upper_trivial) continue;
    for (std::size_t g = 0; g < T->elems.size(); ++g) {
      const auto& x = T->elems[g];
      bool torus = x[1] == 0 && x[2] == 0;
      bool lower = x[0] == 1 && x[1] == 0 && x[3] == 1;
      if ((torus || lower) && T->images[g] != I) {
        throw invariant_violation("trivial upper unipotent part with nontrivial torus or lower part");
      }
    }
  }
  return agree_all;
}

// ---------------------------------------------------------------------------

int default_degree_bound(const CanonicalForm& F, unsigned p) {
  int e = std::max({F.e1, F.e2, 0});
  return static_cast<int>(2 * ipow_ll(p, e) + 1);
}

namespace {

bool sl2_group_small(std::uint32_t q) {
  std::uint64_t order = std::uint64_t(q) * (std::uint64_t(q) * q - 1);
  return order <= 1000;
}

}  // namespace

FundamentalityVerdict decide_fundamental(const BorelRep& phi) {
  const Field* f = phi.field();
  const unsigned p = f->p();
  FundamentalityVerdict out{false, normalize_to_canonical(phi), {}, {}, {}, {}, {}};
  const CanonicalForm& F = out.report.form;
  Eligibility el = lambda_sharp_membership(F, p);
  const int D = default_degree_bound(F, p);

  if (el.eligible) {
    Sl2Formula star = build_psi(F, f);
    if (restrict_along_iota(star) != out.report.canonical_rep.entries()) {
      throw invariant_violation("extension formula does not restrict to " + F.to_string());
    }
    for (std::uint32_t q : {std::uint32_t(p), std::uint32_t(p * p)}) {
      Sl2CheckMode mode = sl2_group_small(q) ? Sl2CheckMode::AllPairs : Sl2CheckMode::Generators;
      Sl2HomVerdict v = verify_sl2_hom(star, q, mode);
      if (!v.ok) throw invariant_violation("extension of " + F.to_string() + " fails over F_" + std::to_string(q) + ": " + v.witness);
    }
    Sl2Formula psi = conjugate_psi(star, out.report.conjugator);
    if (restrict_along_iota(psi) != phi.entries()) {
      throw invariant_violation("transported extension does not restrict to the input");
    }
    UMinusResult um = solve_uminus(out.report.canonical_rep, D);
    if (!um.solution) throw invariant_violation("functional equation unsolvable for an eligible form");
    Mat3<UPoly> low = lower_unipotent_part(star);
    if (!(um.solution->v21 == low(1, 0) && um.solution->v31 == low(2, 0) && um.solution->v32 == low(2, 1))) {
      throw invariant_violation("functional-equation solution differs from the extension's lower unipotent part");
    }
    out.fundamental = true;
    out.psi = psi;
    out.canonical_psi = star;
    out.uminus = um.solution;
    return out;
  }

  out.fundamental = false;
  Mat3<UPoly> ustar = canonical_u(F, f);
  bool u_trivial = ustar == poly_identity<UPoly>(f);
  if (u_trivial) {
    out.certificate = "trivial u, nontrivial h: a trivial upper unipotent part forces a trivial torus part";
    return out;
  }
  const bool asymmetric_family = F.tag == FormTag::VIII || F.tag == FormTag::IX || F.tag == FormTag::X || F.tag == FormTag::XI;
  if (asymmetric_family) {
    if (symmetric_weights(F.weights)) throw invariant_violation("symmetric weights in " + F.to_string());
    std::ostringstream os;
    os << "weights (" << F.weights[0] << "," << F.weights[1] << "," << F.weights[2]
       << ") are not symmetric under negation, but the weights of an SL(2) representation are";
    out.certificate = os.str();
    return out;
  }
  UMinusResult um = solve_uminus(out.report.canonical_rep, D);
  if (um.solution) throw invariant_violation("functional equation solvable for ineligible " + F.to_string());
  out.uminus_certificate = um.certificate;
  out.certificate = "functional equation for the lower unipotent part is inconsistent: " + um.certificate->to_string();
  return out;
}

}  // namespace brep
