#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brep/forms.hpp"
#include "brep/gm_diag.hpp"

namespace brep {

// Case of the Borel case analysis, with the scalars and Frobenius indices it
// defines. Tags: 1.1, 1.2.a-d, 1.3.a-d, 2.a-d, 3.a-d, 4.
struct CaseLabel {
  std::string tag;
  std::optional<Fq> c1, c2, lambda;
  std::optional<int> e1, e2;

  std::string to_string() const;
};

struct ClassificationReport {
  CaseLabel case_label;
  CanonicalForm form;
  FMat conjugator;  // conjugator^{-1} phi conjugator = canonical_rep
  BorelRep canonical_rep;
  std::optional<std::vector<int>> d, d_prime;
};

// Equal-weight runs of w, e.g. {1,1,1}, {2,1}, {1,2} or {3}. Throws
// invariant_violation unless u is block upper triangular with identity
// diagonal blocks.
std::vector<int> check_block_structure(const WeightTuple& w, const Mat3<UPoly>& u);

// u is the unipotent part in a basis where the torus acts by diag(z^w).
CaseLabel analyze_case(const WeightTuple& w, const Mat3<UPoly>& u, const Field* f);

// The normalizing conjugator prescribed for a case.
FMat case_conjugator(const CaseLabel& c, const Field* f);
CanonicalForm case_form(const CaseLabel& c, const WeightTuple& w, unsigned p);

ClassificationReport normalize_to_canonical(const BorelRep& phi);

// Dimension vectors of the column and row weight spaces
// V_l = {v : phi(t,z) v = z^l v} and V'_l = {v : v phi(t,z) = z^l v}.
// phi must have diagonal, sorted torus part; pattern (4) is rejected.
std::pair<std::vector<int>, std::vector<int>> weight_space_dims(const BorelRep& phi);

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<FMat> conjugator;  // Q^{-1} phi1 Q = phi2
  CanonicalForm form1, form2;
};
EquivalenceResult test_equivalence(const BorelRep& phi1, const BorelRep& phi2);

}  // namespace brep
