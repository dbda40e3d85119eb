#include <gtest/gtest.h>

#include <random>

#include "brep/classify.hpp"

using namespace brep;

namespace {

FMat random_regular(const Field* f, std::mt19937& rng) {
  FMat P;
  do {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) P(i, j) = f->element(rng() % f->q());
    }
  } while (det3(P).is_zero());
  return P;
}

UPoly mono(const Field* f, long long c, int k) { return UPoly::monomial(f->from_int(c), {k}); }

BorelRep from_u(const Field* f, const Mat3<UPoly>& u, const WeightTuple& w) {
  return BorelRep::make(f, compose_u_h(u, w, f));
}

}  // namespace

TEST(Forms, DivisibilityRule) {
  EXPECT_TRUE(three_divisibility(5, 0, 1));   // (2 + 10) / 3 = 4
  EXPECT_FALSE(three_divisibility(2, 0, 2));  // (2 + 8) / 3
  EXPECT_TRUE(three_divisibility(3, 1, 5));
  // At p = 3 the numerator 2 + 2 * 3^e2 is 2 mod 3 when e1 = 0.
  EXPECT_FALSE(three_divisibility(3, 0, 5));
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u}) {
    for (int e2 = 1; e2 <= 6; ++e2) {
      for (int e1 = 0; e1 < e2; ++e1) {
        EXPECT_EQ(three_divisibility(p, e1, e2), (2 * ipow_ll(p, e1) + 2 * ipow_ll(p, e2)) % 3 == 0);
      }
    }
  }
}

TEST(Forms, ConstructorsValidatePayloads) {
  EXPECT_THROW(CanonicalForm::make_I(2, 0), invalid_input);
  EXPECT_THROW(CanonicalForm::make_III(3, {3, 0, -3}, 0), invalid_input);
  EXPECT_THROW(CanonicalForm::make_II({1, 1, -2}), invalid_input);
  EXPECT_THROW(CanonicalForm::make_V(2, 0, 2), invalid_input);
  EXPECT_NO_THROW(CanonicalForm::make_V(2, 0, 1));
  EXPECT_EQ(CanonicalForm::make_I(3, 0).to_string(), "(I)* e1=0");
}

TEST(Forms, SmallEnumeration) {
  int two = 0;
  for (const auto& F : enumerate_forms(5, 2, 2)) {
    if (F.tag == FormTag::II) ++two;
    EXPECT_EQ(F.weights[0] + F.weights[1] + F.weights[2], 0);
  }
  EXPECT_EQ(two, 2);  // (1,0,-1) and (2,0,-2)
}

TEST(Classify, BlockStructure) {
  const Field* f = Field::get(3, 1);
  Mat3<UPoly> u = poly_identity<UPoly>(f);
  u(0, 1) = mono(f, 1, 1);
  EXPECT_EQ(check_block_structure({2, 0, -2}, u), (std::vector<int>{1, 1, 1}));
  Mat3<UPoly> v = poly_identity<UPoly>(f);
  v(0, 2) = mono(f, 1, 3);
  EXPECT_EQ(check_block_structure({1, 1, -2}, v), (std::vector<int>{2, 1}));
  EXPECT_THROW(check_block_structure({1, 1, -2}, u), invariant_violation);
  EXPECT_EQ(check_block_structure({0, 0, 0}, poly_identity<UPoly>(f)), (std::vector<int>{3}));
}

TEST(Classify, CaseLabels) {
  const Field* f = Field::get(3, 1);
  Mat3<UPoly> u = poly_identity<UPoly>(f);
  u(0, 1) = mono(f, 2, 1);
  u(0, 2) = mono(f, 2, 2);
  u(1, 2) = mono(f, 2, 1);
  CaseLabel L = analyze_case({2, 0, -2}, u, f);
  EXPECT_EQ(L.tag, "1.1");
  EXPECT_EQ(L.c1, f->from_int(2));
  EXPECT_EQ(L.lambda, f->one());
  EXPECT_EQ(L.e1, 0);

  EXPECT_EQ(analyze_case({1, 0, -1}, poly_identity<UPoly>(f), f).tag, "1.2.a");

  Mat3<UPoly> d = poly_identity<UPoly>(f);
  d(0, 2) = mono(f, 1, 3);
  d(1, 2) = mono(f, 1, 3);
  CaseLabel D = analyze_case({2, 2, -4}, d, f);
  EXPECT_EQ(D.tag, "2.d");
  EXPECT_EQ(D.e1, 1);
  EXPECT_EQ(D.e2, 1);
}

TEST(Classify, CaseOneOneNormalizes) {
  const Field* f = Field::get(3, 1);
  Mat3<UPoly> u = poly_identity<UPoly>(f);
  u(0, 1) = mono(f, 2, 1);
  u(0, 2) = mono(f, 2, 2);
  u(1, 2) = mono(f, 2, 1);
  BorelRep phi = from_u(f, u, {2, 0, -2});
  ClassificationReport r = normalize_to_canonical(phi);
  EXPECT_EQ(r.form, CanonicalForm::make_I(3, 0));
  EXPECT_EQ(r.conjugator, diag(f->one(), f->from_int(2), f->one()));
  EXPECT_EQ(conjugate(phi, r.conjugator).entries(), r.canonical_rep.entries());
}

TEST(Classify, TrivialRepresentation) {
  const Field* f = Field::get(2, 1);
  ClassificationReport r = normalize_to_canonical(BorelRep::make(f, poly_identity<BiLaurent>(f)));
  EXPECT_EQ(r.form.tag, FormTag::XII);
  EXPECT_EQ(r.conjugator, identity(f));
}

// In case 2 the (2,3) entry carries c1 and the (1,3) entry carries c2.
TEST(Classify, CaseTwoBKeepsTheBasisOrder) {
  const Field* f = Field::get(3, 1);
  Mat3<UPoly> u = poly_identity<UPoly>(f);
  u(1, 2) = mono(f, 2, 3);
  BorelRep phi = from_u(f, u, {2, 2, -4});
  ClassificationReport r = normalize_to_canonical(phi);
  EXPECT_EQ(r.case_label.tag, "2.b");
  EXPECT_EQ(r.form, CanonicalForm::make_IX(3, 1));
  EXPECT_EQ(r.conjugator, diag(f->one(), f->one(), f->from_int(2)));
  EXPECT_EQ(conjugate(phi, r.conjugator).entries(), r.canonical_rep.entries());
}

TEST(Classify, CaseTwoCGivesNineWithPermutation) {
  const Field* f = Field::get(3, 1);
  Mat3<UPoly> u = poly_identity<UPoly>(f);
  u(0, 2) = mono(f, 1, 3);
  BorelRep phi = from_u(f, u, {2, 2, -4});
  ClassificationReport r = normalize_to_canonical(phi);
  EXPECT_EQ(r.case_label.tag, "2.c");
  EXPECT_EQ(r.form, CanonicalForm::make_IX(3, 1));
  bool permutes = false;
  for (int i = 0; i < 3; ++i) permutes = permutes || r.conjugator(i, i).is_zero();
  EXPECT_TRUE(permutes);
  EXPECT_EQ(conjugate(phi, r.conjugator).entries(), r.canonical_rep.entries());
}

TEST(Classify, CanonicalInstancesAreFixedPoints) {
  for (unsigned p : {2u, 3u, 5u}) {
    const Field* f = Field::get(p, 1);
    for (const auto& F : enumerate_forms(p, 2, static_cast<int>(2 * p))) {
      ClassificationReport r = normalize_to_canonical(instantiate(F, f));
      EXPECT_EQ(r.form, F);
      EXPECT_EQ(r.conjugator, identity(f)) << F.to_string();
    }
  }
}

TEST(Classify, ConjugationInvariance) {
  std::mt19937 rng(17);
  for (unsigned p : {2u, 3u}) {
    const Field* f = Field::get(p, 2);
    for (const auto& F : enumerate_forms(p, 1, 6)) {
      BorelRep star = instantiate(F, f);
      for (int trial = 0; trial < 20; ++trial) {
        BorelRep phi = conjugate(star, random_regular(f, rng));
        ClassificationReport r = normalize_to_canonical(phi);
        ASSERT_EQ(r.form, F);
        EXPECT_FALSE(det3(r.conjugator).is_zero());
        EXPECT_EQ(lift<BiLaurent>(inverse(r.conjugator)) * phi.entries() * lift<BiLaurent>(r.conjugator),
                  star.entries());
      }
    }
  }
}

TEST(Classify, WeightSpaceDimensions) {
  const Field* f = Field::get(3, 1);
  auto dims = [&](const CanonicalForm& F) { return weight_space_dims(instantiate(F, f)); };
  using V = std::vector<int>;
  EXPECT_EQ(dims(CanonicalForm::make_I(3, 0)), (std::pair<V, V>{{1, 0, 0}, {0, 0, 1}}));
  EXPECT_EQ(dims(CanonicalForm::make_II({2, 0, -2})), (std::pair<V, V>{{1, 1, 1}, {1, 1, 1}}));
  EXPECT_EQ(dims(CanonicalForm::make_X(2)), (std::pair<V, V>{{1, 2}, {1, 2}}));
  EXPECT_EQ(dims(CanonicalForm::make_VI(3, {2, 0, -2}, 0)), (std::pair<V, V>{{1, 1, 0}, {1, 0, 1}}));
}

// (III)* has a single off-diagonal entry at (1,2), so the rows e2 and e3 are
// themselves weight rows and e1 is not: d' = (0,1,1). Likewise (IV)*, whose
// only off-diagonal entry is at (1,3).
TEST(Classify, RowWeightSpacesOfSingleEntryForms) {
  const Field* f = Field::get(3, 1);
  using V = std::vector<int>;
  for (const CanonicalForm& F : {CanonicalForm::make_III(3, {2, 0, -2}, 0), CanonicalForm::make_IV(3, {3, 0, -3}, 1)}) {
    BorelRep phi = instantiate(F, f);
    for (int r = 1; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        EXPECT_EQ(phi(r, c), r == c ? BiLaurent::var(f, 1, F.weights[r]) : BiLaurent(f));
      }
    }
    EXPECT_EQ(weight_space_dims(phi).second, (V{0, 1, 1})) << F.to_string();
  }
}

TEST(Classify, Equivalence) {
  std::mt19937 rng(23);
  const Field* f = Field::get(3, 2);
  BorelRep six = instantiate(CanonicalForm::make_VI(3, {2, 0, -2}, 0), f);
  EquivalenceResult self = test_equivalence(six, six);
  EXPECT_TRUE(self.equivalent);
  EXPECT_EQ(self.conjugator, identity(f));

  BorelRep a = conjugate(six, random_regular(f, rng)), b = conjugate(six, random_regular(f, rng));
  EquivalenceResult ab = test_equivalence(a, b);
  ASSERT_TRUE(ab.equivalent);
  ASSERT_TRUE(ab.conjugator);
  EXPECT_EQ(conjugate(a, *ab.conjugator).entries(), b.entries());

  BorelRep three = instantiate(CanonicalForm::make_III(3, {2, 0, -2}, 0), f);
  EquivalenceResult no = test_equivalence(three, six);
  EXPECT_FALSE(no.equivalent);
  EXPECT_FALSE(no.conjugator);
}
