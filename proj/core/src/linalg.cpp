#include "brep/linalg.hpp"

#include <utility>

#include "brep/errors.hpp"

namespace brep {

void FMatrix::append_row(const std::vector<std::uint32_t>& row) {
  if (row.size() != cols_) throw invariant_violation("row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Echelon row_reduce(FMatrix m) {
  const Field* f = m.field();
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> origin(R);
  for (std::size_t i = 0; i < R; ++i) origin[i] = i;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t piv = R;
    for (std::size_t i = row; i < R; ++i) {
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == R) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < C; ++j) std::swap(m.at(piv, j), m.at(row, j));
      std::swap(origin[piv], origin[row]);
    }
    std::uint32_t inv = f->inv(m.at(row, col));
    for (std::size_t j = col; j < C; ++j) m.at(row, j) = f->mul(m.at(row, j), inv);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row) continue;
      std::uint32_t factor = m.at(i, col);
      if (factor == 0) continue;
      std::uint32_t nf = f->neg(factor);
      for (std::size_t j = col; j < C; ++j) {
        if (m.at(row, j) != 0) m.at(i, j) = f->add(m.at(i, j), f->mul(nf, m.at(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots), std::move(origin)};
}

std::size_t rank(const FMatrix& m) { return row_reduce(m).pivots.size(); }

std::vector<std::vector<Fq>> nullspace(const FMatrix& m) {
  const Field* f = m.field();
  Echelon e = row_reduce(m);
  const std::size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<Fq>> basis;
  for (std::size_t free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Fq> v(C, f->zero());
    v[free] = f->one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      v[e.pivots[r]] = f->element(f->neg(e.reduced.at(r, free)));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

SolveResult solve_augmented(const FMatrix& aug) {
  const Field* f = aug.field();
  const std::size_t n = aug.cols() - 1;
  Echelon e = row_reduce(aug);
  SolveResult res;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == n) {
      res.bad_row = e.origin[r];
      return res;
    }
  }
  std::vector<Fq> x(n, f->zero());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced.get(r, n);
  res.unique = e.pivots.size() == n;
  res.x = std::move(x);
  return res;
}

}  // namespace brep
