#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "brep/ga_fund.hpp"

using namespace brep;

namespace {

UPoly T(const Field* f, int k, long long c = 1) { return UPoly::monomial(f->from_int(c), {k}); }

GaTriple triple(const Field* f, UPoly a12, UPoly a13, UPoly a23) {
  return {a12 + UPoly(f), a13 + UPoly(f), a23 + UPoly(f)};
}

// x(c T) for a scalar c.
UPoly rescale(const UPoly& x, Fq c) {
  UPoly r(x.field());
  for (const auto& [k, a] : x.terms()) r += UPoly::monomial(a * c.pow(k[0]), k);
  return r;
}

}  // namespace

TEST(GaTriple, CocycleCheck) {
  const Field* f = Field::get(3, 1);
  EXPECT_NO_THROW(check_ga_triple(triple(f, T(f, 1), T(f, 2, 2), T(f, 1))));
  EXPECT_THROW(check_ga_triple(triple(f, T(f, 1), UPoly(f), T(f, 2))), not_a_homomorphism);
  EXPECT_THROW(check_ga_triple(triple(f, T(f, 1), UPoly(f), T(f, 1))), not_a_homomorphism);
}

TEST(ClassifyGa, Examples) {
  const Field* f = Field::get(3, 1);
  GaClassTag a = classify_ga(triple(f, T(f, 1), UPoly(f), UPoly(f)));
  ASSERT_EQ(a.matches.size(), 1u);
  EXPECT_EQ(a.matches[0].tag, GaClass::A12);
  EXPECT_EQ(a.matches[0].alpha1.expand(), T(f, 1));
  EXPECT_TRUE(a.matches[0].alpha2.is_zero());

  GaClassTag u = classify_ga(triple(f, T(f, 1), T(f, 2, 2), T(f, 1)));
  ASSERT_EQ(u.matches.size(), 1u);
  EXPECT_EQ(u.matches[0].tag, GaClass::U3);
  EXPECT_EQ(u.matches[0].lambda, f->one());
  EXPECT_EQ(u.matches[0].alpha1.expand(), T(f, 1));
  EXPECT_TRUE(u.matches[0].alpha2.is_zero());

  EXPECT_THROW(classify_ga(triple(f, T(f, 1), UPoly(f), T(f, 2))), not_a_homomorphism);
}

TEST(ClassifyGa, TrivialTripleIsInEveryDegenerateClass) {
  const Field* f = Field::get(2, 1);
  GaClassTag t = classify_ga(triple(f, UPoly(f), UPoly(f), UPoly(f)));
  EXPECT_TRUE(t.has(GaClass::Trivial));
  EXPECT_TRUE(t.has(GaClass::A12));
  EXPECT_TRUE(t.has(GaClass::A21));
  EXPECT_FALSE(t.has(GaClass::U3));
}

TEST(ClassifyGa, StableUnderRescaling) {
  const Field* f = Field::get(3, 2);
  std::vector<GaTriple> samples = {
      triple(f, T(f, 1), T(f, 2, 2), T(f, 1)),
      triple(f, T(f, 1) + T(f, 3), T(f, 9), UPoly(f)),
      triple(f, UPoly(f), T(f, 3, 2), T(f, 1, 2)),
      triple(f, T(f, 3), T(f, 6, 2) + T(f, 1), T(f, 3)),
  };
  for (const GaTriple& u : samples) {
    std::vector<GaClass> base;
    for (const auto& m : classify_ga(u).matches) base.push_back(m.tag);
    for (std::uint32_t c = 1; c < f->q(); ++c) {
      Fq s = f->element(c);
      GaTriple v{rescale(u.a12, s), rescale(u.a13, s), rescale(u.a23, s)};
      std::vector<GaClass> got;
      for (const auto& m : classify_ga(v).matches) got.push_back(m.tag);
      EXPECT_EQ(got, base);
    }
  }
}

TEST(DecideGa, FormTwoOneAtThree) {
  const Field* f = Field::get(3, 1);
  GaTriple u = triple(f, T(f, 1, 2), T(f, 2, 2), T(f, 1, 2));
  GaVerdict v = decide_ga_fundamental(u);
  ASSERT_TRUE(v.fundamental);
  EXPECT_EQ(v.condition, "(2.1)");
  EXPECT_EQ(v.e, 0);
  EXPECT_EQ(v.borel_form, CanonicalForm::make_I(3, 0));
  EXPECT_EQ(inverse(v.conjugator) * u.matrix() * v.conjugator, v.u_sharp);
  ASSERT_TRUE(v.psi);
  EXPECT_EQ(upper_unipotent_part(*v.psi), u.matrix());
  EXPECT_TRUE(verify_sl2_hom(*v.psi, 3).ok);
  EXPECT_TRUE(verify_sl2_hom(*v.psi, 9).ok);
}

TEST(DecideGa, NonMonomialIsNotFundamental) {
  const Field* f = Field::get(3, 1);
  GaVerdict v = decide_ga_fundamental(triple(f, T(f, 1) + T(f, 3), UPoly(f), UPoly(f)));
  EXPECT_FALSE(v.fundamental);
  EXPECT_FALSE(v.psi);
}

TEST(DecideGa, TrivialTriple) {
  for (unsigned p : {2u, 3u}) {
    const Field* f = Field::get(p, 1);
    GaVerdict v = decide_ga_fundamental(triple(f, UPoly(f), UPoly(f), UPoly(f)));
    ASSERT_TRUE(v.fundamental);
    EXPECT_EQ(v.condition, p == 2 ? "(1.4)" : "(2.3)");
    ASSERT_TRUE(v.psi);
    EXPECT_EQ(v.psi->m, poly_identity<AbcdPoly>(f));
  }
}

TEST(DecideGa, FormOneTwoAtTwo) {
  const Field* f = Field::get(2, 1);
  GaTriple u = triple(f, T(f, 1), T(f, 2), UPoly(f));
  GaVerdict v = decide_ga_fundamental(u);
  ASSERT_TRUE(v.fundamental);
  EXPECT_EQ(v.condition, "(1.2)");
  EXPECT_EQ(v.e, 0);
  ASSERT_TRUE(v.psi);
  EXPECT_EQ(upper_unipotent_part(*v.psi), u.matrix());
  EXPECT_TRUE(verify_sl2_hom(*v.psi, 2).ok);
  EXPECT_TRUE(verify_sl2_hom(*v.psi, 4).ok);
}

TEST(DecideGa, ExtensionsRestrictAndVerify) {
  std::mt19937 rng(41);
  for (unsigned p : {2u, 3u}) {
    const Field* f = Field::get(p, 1);
    const std::vector<int> supports = {1, static_cast<int>(p), 2, static_cast<int>(2 * p)};
    int positives = 0;
    for (int trial = 0; trial < 300; ++trial) {
      auto pick = [&]() {
        UPoly x(f);
        if (rng() % 2) x += T(f, supports[rng() % supports.size()], 1 + rng() % (p - 1));
        return x;
      };
      GaTriple u = triple(f, pick(), pick(), pick());
      try {
        check_ga_triple(u);
      } catch (const not_a_homomorphism&) {
        continue;
      }
      GaVerdict v = decide_ga_fundamental(u);
      if (!v.fundamental) continue;
      ++positives;
      ASSERT_TRUE(v.psi);
      EXPECT_EQ(upper_unipotent_part(*v.psi), u.matrix());
      EXPECT_TRUE(verify_sl2_hom(*v.psi, p).ok);
      EXPECT_TRUE(verify_sl2_hom(*v.psi, p * p).ok);
    }
    EXPECT_GT(positives, 0);
  }
}

TEST(Catalog, ClassCounts) {
  EXPECT_EQ(ga_fundamental_class_count(3, 1), 5);
  EXPECT_EQ(ga_fundamental_class_count(2, 0), 4);
  for (int E = 0; E <= 3; ++E) {
    EXPECT_EQ(ga_fundamental_class_count(2, E), 3 * (E + 1) + 1);
    EXPECT_EQ(ga_fundamental_class_count(5, E), 2 * (E + 1) + 1);
  }
}

TEST(Catalog, FormTwoInstancesAndTsv) {
  Catalog c = enumerate_classes(5, 1, 1, 2);
  int two = 0;
  for (const auto& e : c.entries) {
    if (e.form.tag == FormTag::II) {
      ++two;
      EXPECT_FALSE(e.fundamental);
    }
    if (e.form.tag == FormTag::XII) {
      EXPECT_TRUE(e.fundamental);
    }
  }
  EXPECT_EQ(two, 2);
  std::string tsv = catalog_tsv(c);
  EXPECT_EQ(static_cast<std::size_t>(std::count(tsv.begin(), tsv.end(), '\n')), c.entries.size());
  EXPECT_THROW(enumerate_classes(5, 1, -1, 2), invalid_input);
}
