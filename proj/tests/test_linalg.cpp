#include <gtest/gtest.h>

#include <random>

#include "brep/linalg.hpp"

using namespace brep;

namespace {

FMatrix random_matrix(const Field* f, std::size_t r, std::size_t c, std::mt19937& rng, int zero_bias) {
  FMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = static_cast<int>(rng() % 4) < zero_bias ? 0 : rng() % f->q();
  }
  return m;
}

std::vector<Fq> mat_vec(const FMatrix& m, const std::vector<Fq>& x) {
  const Field* f = m.field();
  std::vector<Fq> y(m.rows(), f->zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m.get(i, j) * x[j];
  }
  return y;
}

// Number of solutions of m x = 0, counted by enumerating all x.
std::size_t kernel_size_brute(const FMatrix& m) {
  const Field* f = m.field();
  std::size_t total = 1, count = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) total *= f->q();
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<Fq> x;
    std::size_t r = idx;
    for (std::size_t j = 0; j < m.cols(); ++j, r /= f->q()) x.push_back(f->element(r % f->q()));
    bool zero = true;
    for (Fq y : mat_vec(m, x)) zero = zero && y.is_zero();
    count += zero;
  }
  return count;
}

}  // namespace

TEST(Linalg, RankNullityAgainstEnumeration) {
  std::mt19937 rng(1);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const Field* f = Field::of_order(q);
    for (int trial = 0; trial < 40; ++trial) {
      FMatrix m = random_matrix(f, 1 + rng() % 4, 1 + rng() % 4, rng, trial % 3);
      auto basis = nullspace(m);
      EXPECT_EQ(rank(m) + basis.size(), m.cols());
      std::size_t expected = 1;
      for (std::size_t i = 0; i < basis.size(); ++i) expected *= q;
      EXPECT_EQ(kernel_size_brute(m), expected);
      for (const auto& v : basis) {
        for (Fq y : mat_vec(m, v)) EXPECT_TRUE(y.is_zero());
      }
    }
  }
}

TEST(Linalg, SolveAugmented) {
  std::mt19937 rng(2);
  const Field* f = Field::get(5, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng() % 4;
    FMatrix A = random_matrix(f, n + rng() % 2, n, rng, 1);
    std::vector<Fq> x0;
    for (std::size_t j = 0; j < n; ++j) x0.push_back(f->element(rng() % 5));
    auto b = mat_vec(A, x0);
    FMatrix aug(f, A.rows(), n + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
      for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
      aug.set(i, n, b[i]);
    }
    SolveResult s = solve_augmented(aug);
    ASSERT_TRUE(s.x);
    EXPECT_EQ(mat_vec(A, *s.x), b);
    EXPECT_EQ(s.unique, rank(A) == n);
  }
}

TEST(Linalg, InconsistentSystemReportsRow) {
  const Field* f = Field::get(3, 1);
  FMatrix aug(f, 2, 2);
  aug.at(0, 0) = 1;
  aug.at(0, 1) = 1;
  aug.at(1, 0) = 2;
  aug.at(1, 1) = 1;  // x = 1 and 2x = 1 (so x = 2)
  SolveResult s = solve_augmented(aug);
  EXPECT_FALSE(s.x);
  ASSERT_TRUE(s.bad_row);
  EXPECT_EQ(*s.bad_row, 1u);
}

TEST(Linalg, EchelonPivots) {
  const Field* f = Field::get(2, 1);
  FMatrix m(f, 3, 3);
  m.append_row({0, 0, 0});
  FMatrix a(f, 0, 3);
  a.append_row({0, 1, 1});
  a.append_row({0, 1, 0});
  Echelon e = row_reduce(a);
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(rank(a), 2u);
  EXPECT_EQ(m.rows(), 4u);
}
