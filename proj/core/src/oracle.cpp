#include "brep/oracle.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "brep/linalg.hpp"

namespace brep {

namespace {

using Raw9 = std::array<std::uint32_t, 9>;

Raw9 mul9(const Field* F, const Raw9& x, const Raw9& y) {
  Raw9 r{};
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

const Field* target_field(const Field* src, std::uint32_t q) {
  const Field* F = Field::of_order(q);
  if (F->p() != src->p()) throw invalid_input("F_" + std::to_string(q) + " has the wrong characteristic");
  return F;
}

// phi(t, z) for every t in F and z in F^*, indexed by t * (q-1) + (z-1).
std::vector<Raw9> evaluate_all(const BorelRep& phi, const Field* F) {
  CoefficientMap emb(phi.field(), F);
  struct Term {
    std::uint32_t c;
    int i, j;
  };
  std::array<std::vector<Term>, 9> terms;
  for (int r = 0; r < 3; ++r) {
    for (int s = 0; s < 3; ++s) {
      for (const auto& [k, c] : phi(r, s).terms()) terms[r * 3 + s].push_back({emb(c).v, k[0], k[1]});
    }
  }
  const std::uint32_t q = F->q();
  std::vector<Raw9> out(std::size_t(q) * (q - 1));
  for (std::uint32_t t = 0; t < q; ++t) {
    for (std::uint32_t z = 1; z < q; ++z) {
      Raw9& m = out[std::size_t(t) * (q - 1) + (z - 1)];
      for (int e = 0; e < 9; ++e) {
        std::uint32_t acc = 0;
        for (const Term& x : terms[e]) {
          std::uint32_t v = F->mul(x.c, F->mul(F->pow(t, x.i), F->pow(z, x.j)));
          acc = F->add(acc, v);
        }
        m[e] = acc;
      }
    }
  }
  return out;
}

std::string point_string(const Field* F, std::uint32_t t, std::uint32_t z) {
  return "(" + F->element(t).to_string() + ", " + F->element(z).to_string() + ")";
}

// Results keyed by the full evaluation table: two representations with the
// same values on the group have the same verdict.
struct HomCache {
  std::mutex mu;
  std::unordered_map<std::string, OracleReport> map;
};

HomCache& hom_cache() {
  static HomCache* c = new HomCache;
  return *c;
}

std::string table_key(const Field* F, const std::vector<Raw9>& tab) {
  std::string key = std::to_string(F->p()) + ":" + std::to_string(F->m()) + ":";
  key.reserve(key.size() + tab.size() * 9 * 4);
  for (const Raw9& m : tab) {
    for (std::uint32_t x : m) key.append(reinterpret_cast<const char*>(&x), sizeof x);
  }
  return key;
}

}  // namespace

OracleReport pointwise_hom_check(const BorelRep& phi, std::uint32_t q) {
  const Field* F = target_field(phi.field(), q);
  std::vector<Raw9> tab = evaluate_all(phi, F);
  std::string key = table_key(F, tab);
  {
    HomCache& c = hom_cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.map.find(key);
    if (it != c.map.end()) return it->second;
  }

  OracleReport r;
  const std::uint32_t n = q - 1;
  r.search_space_size = std::uint64_t(tab.size()) * tab.size();
  r.passed = true;
  const Raw9 I{1, 0, 0, 0, 1, 0, 0, 0, 1};
  if (tab[0] != I) {
    r.passed = false;
    r.witness = "phi(0, 1) != I";
  }
  for (std::uint32_t t1 = 0; t1 < q && r.passed; ++t1) {
    for (std::uint32_t z1 = 1; z1 < q && r.passed; ++z1) {
      const Raw9& A = tab[std::size_t(t1) * n + (z1 - 1)];
      std::uint32_t z1sq = F->mul(z1, z1);
      for (std::uint32_t t2 = 0; t2 < q && r.passed; ++t2) {
        std::uint32_t t = F->add(t1, F->mul(z1sq, t2));
        for (std::uint32_t z2 = 1; z2 < q; ++z2) {
          const Raw9& B = tab[std::size_t(t2) * n + (z2 - 1)];
          const Raw9& C = tab[std::size_t(t) * n + (F->mul(z1, z2) - 1)];
          ++r.cases_checked;
          if (mul9(F, A, B) != C) {
            r.passed = false;
            r.witness = "phi(g1) phi(g2) != phi(g1 g2) at g1 = " + point_string(F, t1, z1) + ", g2 = " +
                        point_string(F, t2, z2);
            break;
          }
        }
      }
    }
  }
  HomCache& c = hom_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  if (c.map.size() > 4096) c.map.clear();
  c.map.emplace(std::move(key), r);
  return r;
}

OracleReport conjugator_search(const BorelRep& phi1, const BorelRep& phi2, std::uint32_t q, int ext) {
  if (ext != 1 && ext != 2) throw invalid_input("extension degree must be 1 or 2");
  if ((ext == 1 && q > 4) || (ext == 2 && q > 3)) {
    throw invalid_input("search space cap exceeded for q = " + std::to_string(q) + ", ext = " + std::to_string(ext));
  }
  if (phi1.field() != phi2.field()) throw invalid_input("representations over different fields");
  std::uint32_t Q = q;
  for (int i = 1; i < ext; ++i) Q *= q;
  const Field* F = target_field(phi1.field(), Q);
  Embedding emb(phi1.field(), F);

  OracleReport r;
  std::uint64_t Q3 = std::uint64_t(Q) * Q * Q;
  r.search_space_size = (Q3 - 1) * (Q3 - Q) * (Q3 - std::uint64_t(Q) * Q);

  RepMatrix m1 = embed_matrix(phi1.entries(), emb), m2 = embed_matrix(phi2.entries(), emb);
  BorelRep e1 = BorelRep::make_unchecked(F, m1), e2 = BorelRep::make_unchecked(F, m2);

  // phi1(g) P - P phi2(g) = 0, unknown P(i,j) at slot 3i + j.
  std::vector<Raw9> t1 = evaluate_all(phi1, F), t2 = evaluate_all(phi2, F);
  FMatrix A(F, 0, 9);
  for (std::size_t g = 0; g < t1.size(); ++g) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        std::vector<std::uint32_t> row(9, 0);
        for (int k = 0; k < 3; ++k) {
          // phi1(i,k) P(k,j)
          row[k * 3 + j] = F->add(row[k * 3 + j], t1[g][i * 3 + k]);
          // - P(i,k) phi2(k,j)
          row[i * 3 + k] = F->sub(row[i * 3 + k], t2[g][k * 3 + j]);
        }
        A.append_row(row);
      }
    }
  }
  // The same identity per monomial. Over a small field z^l only sees l mod
  // (Q - 1), so the pointwise rows alone leave spurious intertwiners that
  // would all be tried and rejected below.
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::map<BiLaurent::Key, std::vector<std::uint32_t>> rows;
      auto row = [&](const BiLaurent::Key& key) -> std::vector<std::uint32_t>& {
        auto it = rows.find(key);
        if (it == rows.end()) it = rows.emplace(key, std::vector<std::uint32_t>(9, 0)).first;
        return it->second;
      };
      for (int k = 0; k < 3; ++k) {
        for (const auto& [key, c] : m1(i, k).terms()) row(key)[k * 3 + j] = F->add(row(key)[k * 3 + j], c.v);
        for (const auto& [key, c] : m2(k, j).terms()) row(key)[i * 3 + k] = F->sub(row(key)[i * 3 + k], c.v);
      }
      for (const auto& [key, r9] : rows) A.append_row(r9);
    }
  }
  std::vector<std::vector<Fq>> basis = nullspace(A);
  const std::size_t d = basis.size();

  auto try_candidate = [&](const std::vector<std::size_t>& idx, const std::vector<std::uint32_t>& coef) {
    FMat P;
    for (int s = 0; s < 9; ++s) {
      std::uint32_t acc = 0;
      for (std::size_t k = 0; k < idx.size(); ++k) acc = F->add(acc, F->mul(coef[k], basis[idx[k]][s].v));
      P(s / 3, s % 3) = F->element(acc);
    }
    ++r.cases_checked;
    if (det3(P).is_zero()) return false;
    if (!(conjugate(e1, P, false) == e2)) return false;
    r.passed = true;
    r.conjugator = P;
    r.witness = "P = " + to_string(P);
    return true;
  };

  // Subsets of the basis by increasing size; the first coefficient is fixed
  // to 1 since scaling preserves both invertibility and intertwining.
  for (std::size_t s = 1; s <= d; ++s) {
    std::vector<std::size_t> idx(s);
    std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t pos, std::size_t start) -> bool {
      if (pos == s) {
        std::vector<std::uint32_t> coef(s, 1);
        while (true) {
          if (try_candidate(idx, coef)) return true;
          std::size_t k = 1;
          while (k < s && coef[k] == Q - 1) coef[k++] = 1;
          if (k == s) return false;
          ++coef[k];
        }
      }
      for (std::size_t i = start; i + (s - pos) <= d; ++i) {
        idx[pos] = i;
        if (choose(pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (choose(0, 0)) return r;
  }
  r.passed = false;
  r.witness = "no conjugator over F_" + std::to_string(Q) + " (intertwiner space of dimension " + std::to_string(d) + ")";
  return r;
}

OracleReport bruhat_factorization_check(std::uint32_t q) {
  if (q < 2) throw invalid_input("q must be at least 2");
  const Field* F = Field::of_order(q);
  using M2 = std::array<std::uint32_t, 4>;
  auto mul = [&](const M2& x, const M2& y) {
    return M2{F->add(F->mul(x[0], y[0]), F->mul(x[1], y[2])), F->add(F->mul(x[0], y[1]), F->mul(x[1], y[3])),
              F->add(F->mul(x[2], y[0]), F->mul(x[3], y[2])), F->add(F->mul(x[2], y[1]), F->mul(x[3], y[3]))};
  };
  OracleReport r;
  r.passed = true;
  r.search_space_size = q - 1;
  const std::uint32_t minus_one = F->neg(1);
  std::ostringstream checked;
  for (std::uint32_t g = 0; g < q; ++g) {
    if (g == minus_one) continue;
    std::uint32_t w = F->add(1, g), wi = F->inv(w);
    M2 lhs = mul(M2{1, 1, 0, 1}, M2{1, 0, g, 1});
    M2 rhs = mul(mul(M2{1, 0, F->mul(g, wi), 1}, M2{w, 0, 0, wi}), M2{1, wi, 0, 1});
    ++r.cases_checked;
    checked << (r.cases_checked > 1 ? "," : "") << F->element(g).to_string();
    if (lhs != rhs) {
      r.passed = false;
      r.witness = "identity fails at gamma = " + F->element(g).to_string();
      return r;
    }
  }
  r.witness = "holds for gamma in {" + checked.str() + "}";
  return r;
}

}  // namespace brep
