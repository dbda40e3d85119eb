#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "brep/ff.hpp"

namespace brep {

// Dense matrix over a finite field, row-major, stored as raw field indices.
class FMatrix {
 public:
  FMatrix(const Field* f, std::size_t rows, std::size_t cols)
      : f_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  const Field* field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Fq x) { at(i, j) = x.v; }
  Fq get(std::size_t i, std::size_t j) const { return f_->element(at(i, j)); }
  void append_row(const std::vector<std::uint32_t>& row);

 private:
  const Field* f_;
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> data_;
};

struct Echelon {
  FMatrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row
  std::vector<std::size_t> origin;    // original index of each row after swaps
};

// Gaussian elimination; the pivot in each column is the first nonzero entry
// at or below the current row.
Echelon row_reduce(FMatrix m);
std::size_t rank(const FMatrix& m);
// Basis of {x : m x = 0}, one vector per free column, in column order.
std::vector<std::vector<Fq>> nullspace(const FMatrix& m);

struct SolveResult {
  std::optional<std::vector<Fq>> x;  // one particular solution if consistent
  bool unique = false;
  // On inconsistency: original row index whose reduced form reads 0 = c != 0.
  std::optional<std::size_t> bad_row;
};
// Solves A x = b where b is the last column of aug.
SolveResult solve_augmented(const FMatrix& aug);

}  // namespace brep
