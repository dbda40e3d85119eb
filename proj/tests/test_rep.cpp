#include <gtest/gtest.h>

#include <random>

#include "brep/forms.hpp"
#include "brep/gm_diag.hpp"
#include "brep/oracle.hpp"
#include "brep/rep.hpp"

using namespace brep;

namespace {

BiLaurent z_(const Field* f, int k = 1) { return BiLaurent::var(f, 1, k); }

FMat random_regular(const Field* f, std::mt19937& rng) {
  FMat P;
  do {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) P(i, j) = f->element(rng() % f->q());
    }
  } while (det3(P).is_zero());
  return P;
}

GmRep diag_h(const Field* f, int a, int b, int c) {
  GmRep h{f, poly_identity<BiLaurent>(f)};
  h.m(0, 0) = z_(f, a);
  h.m(1, 1) = z_(f, b);
  h.m(2, 2) = z_(f, c);
  return h;
}

}  // namespace

TEST(BorelRep, IdentityIsHomomorphism) {
  const Field* f = Field::get(3, 1);
  BorelRep I = BorelRep::make(f, poly_identity<BiLaurent>(f));
  EXPECT_TRUE(verify_borel_homomorphism(I).ok);
  EXPECT_TRUE(pointwise_hom_check(I, 3).passed);
}

TEST(BorelRep, CanonicalFormsPassSymbolicAndPointwise) {
  for (unsigned p : {2u, 3u, 5u}) {
    const Field* f = Field::get(p, 1);
    for (const auto& F : enumerate_forms(p, 1, 6)) {
      BorelRep phi = instantiate(F, f);
      EXPECT_TRUE(verify_borel_homomorphism(phi).ok) << F.to_string();
      EXPECT_TRUE(pointwise_hom_check(phi, p).passed) << F.to_string();
      EXPECT_EQ(det3(phi.entries()), BiLaurent::one(f));
    }
  }
}

TEST(BorelRep, CorruptedCoefficientFailsAtEntry13) {
  const Field* f = Field::get(3, 1);
  Mat3<UPoly> u = canonical_u(CanonicalForm::make_I(3, 0), f);
  ASSERT_EQ(u(0, 2), UPoly::monomial(f->from_int(2), {2}));
  u(0, 2) = UPoly::var(f, 0, 2);
  BorelRep bad = BorelRep::make_unchecked(f, compose_u_h(u, {2, 0, -2}, f));
  HomVerdict v = verify_borel_homomorphism(bad);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.row, 0);
  EXPECT_EQ(v.col, 2);
  EXPECT_FALSE(pointwise_hom_check(bad, 3).passed);
  EXPECT_THROW(BorelRep::make(f, bad.entries()), not_a_homomorphism);
}

TEST(BorelRep, DeterminantMustBeOne) {
  const Field* f = Field::get(5, 1);
  RepMatrix m = poly_identity<BiLaurent>(f);
  m(0, 0) = z_(f, 2);
  m(2, 2) = z_(f, -1);
  HomVerdict v = verify_borel_homomorphism(BorelRep::make_unchecked(f, m));
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.reason.find("determinant"), std::string::npos);
}

TEST(BorelRep, NegativeTPowerRejected) {
  const Field* f = Field::get(3, 1);
  RepMatrix m = poly_identity<BiLaurent>(f);
  m(0, 1) = BiLaurent::var(f, 0, -1);
  EXPECT_FALSE(verify_borel_homomorphism(BorelRep::make_unchecked(f, m)).ok);
}

TEST(BorelRep, RestrictComponents) {
  const Field* f = Field::get(3, 1);
  auto [h0, u0] = restrict_components(BorelRep::make(f, poly_identity<BiLaurent>(f)));
  EXPECT_EQ(h0.m, poly_identity<BiLaurent>(f));
  EXPECT_EQ(u0.m, poly_identity<UPoly>(f));

  auto [h, u] = restrict_components(instantiate(CanonicalForm::make_IV(3, {1, 0, -1}, 0), f));
  EXPECT_EQ(h.m, diag_h(f, 1, 0, -1).m);

  auto [h1, u1] = restrict_components(instantiate(CanonicalForm::make_I(3, 0), f));
  Mat3<UPoly> want = poly_identity<UPoly>(f);
  want(0, 1) = UPoly::var(f, 0);
  want(0, 2) = UPoly::monomial(f->from_int(2), {2});
  want(1, 2) = UPoly::var(f, 0);
  EXPECT_EQ(u1.m, want);
}

TEST(BorelRep, ConjugationPreservesHomomorphism) {
  std::mt19937 rng(9);
  const Field* f = Field::get(2, 2);
  for (const auto& F : enumerate_forms(2, 1, 4)) {
    BorelRep phi = instantiate(F, f);
    FMat P = random_regular(f, rng);
    BorelRep psi = conjugate(phi, P);
    EXPECT_EQ(lift<BiLaurent>(P) * psi.entries(), phi.entries() * lift<BiLaurent>(P));
  }
}

TEST(GmDiag, DiagonalComponents) {
  const Field* f = Field::get(3, 1);
  auto A = fourier_components(diag_h(f, 2, 0, -2));
  ASSERT_EQ(A.size(), 3u);
  EXPECT_EQ(A.at(2), diag(f->one(), f->zero(), f->zero()));
  EXPECT_EQ(A.at(0), diag(f->zero(), f->one(), f->zero()));
  EXPECT_EQ(A.at(-2), diag(f->zero(), f->zero(), f->one()));

  auto T = fourier_components(diag_h(f, 0, 0, 0));
  ASSERT_EQ(T.size(), 1u);
  EXPECT_EQ(T.at(0), identity(f));
}

TEST(GmDiag, ConjugatedExample) {
  const Field* f = Field::get(3, 1);
  GmRep h = diag_h(f, 2, 0, -2);
  h.m(0, 1) = BiLaurent::one(f) - z_(f, 2);
  auto A = fourier_components(h);
  EXPECT_EQ(A.at(2), from_rows(f, {{{1, -1, 0}, {0, 0, 0}, {0, 0, 0}}}));
  Diagonalization d = diagonalize_gm(h);
  EXPECT_EQ(d.P, from_rows(f, {{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}));
  EXPECT_EQ(d.weights, (WeightTuple{2, 0, -2}));
}

TEST(GmDiag, SortedDiagonalGivesIdentityAndPermutation) {
  const Field* f = Field::get(5, 1);
  Diagonalization d = diagonalize_gm(diag_h(f, 3, -1, -2));
  EXPECT_EQ(d.P, identity(f));
  EXPECT_EQ(d.weights, (WeightTuple{3, -1, -2}));

  Diagonalization s = diagonalize_gm(diag_h(f, -2, 2, 0));
  EXPECT_EQ(s.P, from_rows(f, {{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}}));
  EXPECT_EQ(s.weights, (WeightTuple{2, 0, -2}));
}

TEST(GmDiag, ComponentsAreOrthogonalIdempotents) {
  std::mt19937 rng(4);
  for (unsigned p : {2u, 3u, 5u}) {
    const Field* f = Field::get(p, 2);
    for (const WeightTuple& w : {WeightTuple{2, 0, -2}, WeightTuple{1, 1, -2}, WeightTuple{4, -2, -2}, WeightTuple{0, 0, 0}}) {
      for (int trial = 0; trial < 50; ++trial) {
        FMat P = random_regular(f, rng);
        GmRep h{f, lift<BiLaurent>(inverse(P)) * diag_h(f, w[0], w[1], w[2]).m * lift<BiLaurent>(P)};
        auto A = fourier_components(h);
        FMat sum = diag(f->zero(), f->zero(), f->zero());
        for (const auto& [l, a] : A) {
          sum = sum + a;
          for (const auto& [l2, b] : A) EXPECT_EQ(a * b, l == l2 ? a : diag(f->zero(), f->zero(), f->zero()));
        }
        EXPECT_EQ(sum, identity(f));
        Diagonalization d = diagonalize_gm(h);
        EXPECT_EQ(d.weights, w);
        EXPECT_FALSE(det3(d.P).is_zero());
        EXPECT_EQ(lift<BiLaurent>(inverse(d.P)) * h.m * lift<BiLaurent>(d.P), diag_h(f, w[0], w[1], w[2]).m);
      }
    }
  }
}

TEST(GmDiag, RejectsNonRepresentation) {
  const Field* f = Field::get(3, 1);
  GmRep h{f, poly_identity<BiLaurent>(f)};
  h.m(0, 1) = z_(f);
  EXPECT_THROW(fourier_components(h), not_a_homomorphism);
}
