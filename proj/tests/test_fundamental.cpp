#include <gtest/gtest.h>

#include <random>

#include "brep/fundamental.hpp"

using namespace brep;

namespace {

AbcdPoly v(const Field* f, std::size_t i, int k = 1) { return AbcdPoly::var(f, i, k); }
AbcdPoly c_(const Field* f, long long c) { return AbcdPoly::constant(f->from_int(c)); }
UPoly s_(const Field* f, long long c, int k) { return UPoly::monomial(f->from_int(c), {k}); }

FMat random_regular(const Field* f, std::mt19937& rng) {
  FMat P;
  do {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) P(i, j) = f->element(rng() % f->q());
    }
  } while (det3(P).is_zero());
  return P;
}

std::vector<CanonicalForm> eligible_forms(unsigned p) {
  std::vector<CanonicalForm> out;
  for (const auto& F : enumerate_forms(p, 2, static_cast<int>(2 * p * p))) {
    if (lambda_sharp_membership(F, p).eligible) out.push_back(F);
  }
  return out;
}

}  // namespace

TEST(Eligibility, Examples) {
  EXPECT_TRUE(lambda_sharp_membership(CanonicalForm::make_I(3, 0), 3).eligible);
  EXPECT_TRUE(lambda_sharp_membership(CanonicalForm::make_I(3, 2), 3).eligible);
  EXPECT_FALSE(lambda_sharp_membership(CanonicalForm::make_VI(3, {2, 0, -2}, 0), 3).eligible);
  EXPECT_FALSE(lambda_sharp_membership(CanonicalForm::make_IX(3, 1), 3).eligible);
  EXPECT_TRUE(lambda_sharp_membership(CanonicalForm::make_IV(5, {5, 0, -5}, 1), 5).eligible);
  EXPECT_FALSE(lambda_sharp_membership(CanonicalForm::make_IV(5, {6, -2, -4}, 1), 5).eligible);
  EXPECT_TRUE(lambda_sharp_membership(CanonicalForm::make_V(2, 1, 2), 2).eligible);
  EXPECT_TRUE(lambda_sharp_membership(CanonicalForm::make_XII(), 7).eligible);
}

TEST(BuildPsi, FormOneAtThree) {
  const Field* f = Field::get(3, 1);
  Sl2Formula psi = build_psi(CanonicalForm::make_I(3, 0), f);
  // a=0, b=1, c=2, d=3
  EXPECT_EQ(psi.m(1, 0), c_(f, 2) * v(f, 0) * v(f, 2));
  EXPECT_EQ(psi.m(1, 1), v(f, 0) * v(f, 3) + v(f, 1) * v(f, 2));
  EXPECT_EQ(psi.m(0, 2), c_(f, 2) * v(f, 1).pow(2));
}

TEST(BuildPsi, FormFourAndTrivial) {
  const Field* f = Field::get(5, 1);
  Sl2Formula psi = build_psi(CanonicalForm::make_IV(5, {1, 0, -1}, 0), f);
  Mat3<AbcdPoly> want = poly_identity<AbcdPoly>(f);
  want(0, 0) = v(f, 0);
  want(0, 2) = v(f, 1);
  want(2, 0) = v(f, 2);
  want(2, 2) = v(f, 3);
  EXPECT_EQ(psi.m, want);
  EXPECT_EQ(build_psi(CanonicalForm::make_XII(), f).m, poly_identity<AbcdPoly>(f));
}

TEST(BuildPsi, RestrictsToTheBorelForm) {
  for (unsigned p : {2u, 3u, 5u}) {
    const Field* f = Field::get(p, 1);
    for (const auto& F : eligible_forms(p)) {
      Sl2Formula psi = build_psi(F, f);
      EXPECT_EQ(restrict_along_iota(psi), instantiate(F, f).entries()) << F.to_string();
      // The torus weights of an extendable form are closed under negation.
      std::array<int, 3> w = F.weights, neg{-w[2], -w[1], -w[0]};
      EXPECT_EQ(w, neg);
    }
  }
}

TEST(BuildPsi, IneligibleFormsRejected) {
  const Field* f = Field::get(3, 1);
  EXPECT_THROW(build_psi(CanonicalForm::make_VI(3, {2, 0, -2}, 0), f), invalid_input);
}

TEST(SolveUMinus, FormOneAtThree) {
  const Field* f = Field::get(3, 1);
  UMinusResult r = solve_uminus(instantiate(CanonicalForm::make_I(3, 0), f), 2);
  ASSERT_TRUE(r.solution);
  EXPECT_EQ(r.solution->v21, s_(f, 2, 1));
  EXPECT_EQ(r.solution->v32, s_(f, 2, 1));
  EXPECT_EQ(r.solution->v31, s_(f, 2, 2));
  EXPECT_FALSE(r.certificate);
}

TEST(SolveUMinus, TrivialForm) {
  const Field* f = Field::get(2, 1);
  UMinusResult r = solve_uminus(instantiate(CanonicalForm::make_XII(), f), 3);
  ASSERT_TRUE(r.solution);
  EXPECT_TRUE(r.solution->v21.is_zero() && r.solution->v31.is_zero() && r.solution->v32.is_zero());
}

TEST(SolveUMinus, FormThreeIsInconsistent) {
  for (unsigned p : {2u, 3u}) {
    const Field* f = Field::get(p, 1);
    for (int D : {1, 3, 9}) {
      UMinusResult r = solve_uminus(instantiate(CanonicalForm::make_III(p, {2, 0, -2}, 0), f), D);
      EXPECT_FALSE(r.solution);
      ASSERT_TRUE(r.certificate);
      EXPECT_EQ(r.certificate->row, 3);
      EXPECT_EQ(r.certificate->col, 3);
      EXPECT_EQ(r.certificate->identity, "1 = 1/(1+s)^2");
    }
  }
  EXPECT_THROW(solve_uminus(instantiate(CanonicalForm::make_XII(), Field::get(2, 1)), 0), invalid_input);
}

TEST(Sl2Hom, ExhaustiveSmallGroups) {
  const Field* f = Field::get(3, 1);
  Sl2HomVerdict v = verify_sl2_hom(build_psi(CanonicalForm::make_I(3, 0), f), 3);
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.group_order, 24u);
  EXPECT_EQ(v.products_checked, 576u);

  Sl2Formula I{f, poly_identity<AbcdPoly>(f)};
  EXPECT_TRUE(verify_sl2_hom(I, 9).ok);
}

TEST(Sl2Hom, CorruptedFormulaFails) {
  const Field* f = Field::get(5, 1);
  Sl2Formula psi = build_psi(CanonicalForm::make_IV(5, {1, 0, -1}, 0), f);
  psi.m(0, 2) = v(f, 1).pow(2);
  Sl2HomVerdict v1 = verify_sl2_hom(psi, 5);
  EXPECT_FALSE(v1.ok);
  EXPECT_FALSE(v1.witness.empty());
  EXPECT_FALSE(verify_sl2_hom(psi, 5, Sl2CheckMode::Generators).ok);
}

TEST(Sl2Hom, Uniqueness) {
  const Field* f = Field::get(3, 1);
  CanonicalForm iv = CanonicalForm::make_IV(3, {3, 0, -3}, 1);
  Sl2Formula a = build_psi(iv, f);
  FundamentalityVerdict d = decide_fundamental(instantiate(iv, f));
  ASSERT_TRUE(d.canonical_psi);
  EXPECT_TRUE(check_psi_uniqueness(a, a, 3));
  EXPECT_TRUE(check_psi_uniqueness(a, *d.canonical_psi, 9));
  EXPECT_FALSE(check_psi_uniqueness(build_psi(CanonicalForm::make_I(3, 0), f), build_psi(CanonicalForm::make_XII(), f), 3));
}

TEST(Decide, TrivialUnipotentPart) {
  const Field* f = Field::get(5, 1);
  FundamentalityVerdict v = decide_fundamental(instantiate(CanonicalForm::make_II({2, 0, -2}), f));
  EXPECT_FALSE(v.fundamental);
  ASSERT_TRUE(v.certificate);
  EXPECT_EQ(v.certificate->rfind("trivial u, nontrivial h", 0), 0u);
  EXPECT_FALSE(v.psi);
}

TEST(Decide, ConjugatedFormSevenExtends) {
  std::mt19937 rng(31);
  const Field* f = Field::get(2, 2);
  for (int e1 : {0, 1}) {
    CanonicalForm F = CanonicalForm::make_VII(2, e1, e1 + 1);
    BorelRep phi = conjugate(instantiate(F, f), random_regular(f, rng));
    FundamentalityVerdict v = decide_fundamental(phi);
    ASSERT_TRUE(v.fundamental);
    ASSERT_TRUE(v.psi && v.uminus);
    int q = e1 == 0 ? 1 : 2;
    EXPECT_EQ(v.uminus->v21, s_(f, 1, q));
    EXPECT_EQ(v.uminus->v31, s_(f, 1, 2 * q));
    EXPECT_TRUE(v.uminus->v32.is_zero());
    EXPECT_EQ(restrict_along_iota(*v.psi), phi.entries());
    EXPECT_TRUE(verify_sl2_hom(*v.psi, 4).ok);
  }
}

TEST(Decide, FormSixHasCertificate) {
  const Field* f = Field::get(3, 1);
  FundamentalityVerdict v = decide_fundamental(instantiate(CanonicalForm::make_VI(3, {2, 0, -2}, 0), f));
  EXPECT_FALSE(v.fundamental);
  ASSERT_TRUE(v.uminus_certificate);
  EXPECT_EQ(v.uminus_certificate->row, 1);
  EXPECT_EQ(v.uminus_certificate->col, 1);
  EXPECT_EQ(v.uminus_certificate->identity, "1 = (1+s)^2");
}

TEST(Decide, ExtensionsTransportUnderConjugation) {
  std::mt19937 rng(37);
  const Field* f = Field::get(3, 1);
  for (const auto& F : eligible_forms(3)) {
    if (F.e1 > 1 || F.e2 > 1) continue;
    BorelRep phi = conjugate(instantiate(F, f), random_regular(f, rng));
    FundamentalityVerdict v = decide_fundamental(phi);
    ASSERT_TRUE(v.fundamental) << F.to_string();
    EXPECT_EQ(restrict_along_iota(*v.psi), phi.entries());
    EXPECT_TRUE(verify_sl2_hom(*v.psi, 3).ok);
  }
}
