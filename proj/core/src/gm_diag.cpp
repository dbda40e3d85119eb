#include "brep/gm_diag.hpp"

#include <functional>

#include "brep/linalg.hpp"

namespace brep {

std::map<int, FMat> fourier_components(const GmRep& h) {
  const Field* f = h.field;
  std::map<int, FMat> comps;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (const auto& [k, c] : h.m(i, j).terms()) {
        if (k[0] != 0) throw not_a_homomorphism("torus part depends on t");
        auto it = comps.find(k[1]);
        if (it == comps.end()) {
          FMat z;
          for (auto& row : z.a) row.fill(f->zero());
          it = comps.emplace(k[1], z).first;
        }
        it->second(i, j) = c;
      }
    }
  }
  FMat sum;
  for (auto& row : sum.a) row.fill(f->zero());
  for (const auto& [l, A] : comps) {
    sum = sum + A;
    for (const auto& [l2, B] : comps) {
      FMat prod = A * B;
      FMat expect;
      for (auto& row : expect.a) row.fill(f->zero());
      if (l == l2) expect = A;
      if (prod != expect) throw not_a_homomorphism("torus components are not orthogonal idempotents");
    }
  }
  if (!is_identity(sum)) throw not_a_homomorphism("torus components do not sum to the identity");
  return comps;
}

Diagonalization diagonalize_gm(const GmRep& h) {
  const Field* f = h.field;
  auto comps = fourier_components(h);
  Diagonalization d;
  int col = 0;
  for (auto it = comps.rbegin(); it != comps.rend(); ++it) {
    const FMat& A = it->second;
    // Column space of A = row space of A^T; its RREF rows are the reduced
    // column echelon basis vectors, already sorted by pivot.
    FMatrix At(f, 3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) At.set(i, j, A(j, i));
    }
    Echelon e = row_reduce(At);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      if (col >= 3) throw not_a_homomorphism("torus components exceed dimension 3");
      for (int i = 0; i < 3; ++i) d.P(i, col) = e.reduced.get(r, i);
      d.weights[col] = it->first;
      ++col;
    }
  }
  if (col != 3) throw not_a_homomorphism("torus components do not span");
  if (det3(d.P).is_zero()) throw invariant_violation("diagonalizing matrix is singular");
  if (d.weights[0] + d.weights[1] + d.weights[2] != 0) {
    throw not_a_homomorphism("weights do not sum to zero");
  }
  return d;
}

}  // namespace brep
