#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brep/fundamental.hpp"

namespace brep {

// Upper unitriangular u(t) = [[1, a12, a13], [0, 1, a23], [0, 0, 1]].
struct GaTriple {
  UPoly a12, a13, a23;

  const Field* field() const;
  Mat3<UPoly> matrix() const;
  bool operator==(const GaTriple& o) const { return a12 == o.a12 && a13 == o.a13 && a23 == o.a23; }
};

// Throws not_a_homomorphism unless a12, a23 are p-polynomials and
// a13(t+s) - a13(t) - a13(s) = a12(t) a23(s).
void check_ga_triple(const GaTriple& u);

enum class GaClass { U3, A12, A21, Trivial };
std::string ga_class_name(GaClass c);

struct GaClassMatch {
  GaClass tag;
  PPoly alpha1, alpha2;
  std::optional<Fq> lambda;
};

// Every class the triple belongs to; the classes overlap.
struct GaClassTag {
  std::vector<GaClassMatch> matches;
  bool has(GaClass c) const;
};

GaClassTag classify_ga(const GaTriple& u);

struct GaVerdict {
  bool fundamental = false;
  // "(1.1.a)", "(1.1.b)", "(1.2)", "(1.3)", "(1.4)", "(2.1)", "(2.2.a)",
  // "(2.2.b)" or "(2.3)".
  std::string condition;
  std::optional<int> e;
  FMat conjugator;  // conjugator^{-1} u conjugator = u_sharp
  Mat3<UPoly> u_sharp;
  std::optional<CanonicalForm> borel_form;
  std::optional<Sl2Formula> psi;  // extension of the input: psi(1, t, 0, 1) = u(t)
  // (2.1) with a nonzero T^{p^e} term in a13: equivalent to the (2.1) normal
  // form although the listed condition requires that term to vanish.
  bool outside_listed_conditions = false;
  // Whether matching needed scalars outside the coefficient field. Branch
  // parameters are rational in the coefficients, so this stays false.
  bool needs_extension = false;
};

GaVerdict decide_ga_fundamental(const GaTriple& u);

struct CatalogEntry {
  CanonicalForm form;
  bool fundamental = false;
};

struct Catalog {
  std::vector<CatalogEntry> entries;
  int ga_fundamental_classes = 0;
};

// Number of equivalence classes of fundamental G_a representations whose
// Frobenius index is at most max_e: 3(max_e+1)+1 for p = 2, else 2(max_e+1)+1.
int ga_fundamental_class_count(unsigned p, int max_e);

Catalog enumerate_classes(unsigned p, unsigned m, int max_e, int max_weight);

// Tab-separated: tag, payload, fundamental flag.
std::string catalog_tsv(const Catalog& c);

}  // namespace brep
