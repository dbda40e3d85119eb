#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "brep/classify.hpp"

namespace brep {

// psi: SL(2) -> SL(3) as a 3x3 matrix of polynomials in the entries
// (a, b; c, d) of an SL(2) element.
struct Sl2Formula {
  const Field* field = nullptr;
  Mat3<AbcdPoly> m;
  bool operator==(const Sl2Formula& o) const { return field == o.field && m == o.m; }
};

struct Eligibility {
  bool eligible = false;
  std::string reason;
};

// Whether a canonical form belongs to the list of forms that extend to SL(2):
// (I)* with p >= 3, (IV)* with weights (p^e2, 0, -p^e2), (V)* and (VII)* with
// p = 2 and weights (2p^e1, 0, -2p^e1), and (XII)*.
Eligibility lambda_sharp_membership(const CanonicalForm& F, unsigned p);

// The explicit extension of an eligible form. Throws invalid_input otherwise.
Sl2Formula build_psi(const CanonicalForm& F, const Field* f);

// psi(z, t z^-1, 0, z^-1): the Borel representation psi restricts to.
RepMatrix restrict_along_iota(const Sl2Formula& psi);
// psi(1, t, 0, 1) and psi(1, 0, s, 1) (the latter written in t).
Mat3<UPoly> upper_unipotent_part(const Sl2Formula& psi);
Mat3<UPoly> lower_unipotent_part(const Sl2Formula& psi);

// P psi P^{-1}.
Sl2Formula conjugate_psi(const Sl2Formula& psi, const FMat& P);

// Lower unipotent matrix [[1,0,0],[v21,1,0],[v31,v32,1]] in the variable s
// (stored as polynomials in the first variable).
struct UMinus {
  UPoly v21, v31, v32;
  bool operator==(const UMinus& o) const { return v21 == o.v21 && v31 == o.v31 && v32 == o.v32; }
};

struct UMinusCertificate {
  int row = 0, col = 0;  // 1-based entry of the functional equation
  std::string identity;  // e.g. "1 = 1/(1+s)^2"
  std::optional<int> power;  // k when the identity reads 1 = (1+s)^k
  int degree_bound = 0;
  int clearing_exponent = 0;  // power of (1+s) that clears all denominators
  std::string to_string() const;
};

struct UMinusResult {
  std::optional<UMinus> solution;
  std::optional<UMinusCertificate> certificate;
};

// Solves u(1) u^-(s) = u^-(s/(1+s)) h(1+s) u(1/(1+s)) for a lower unipotent
// u^- with entries of degree <= D vanishing at s = 0.
UMinusResult solve_uminus(const BorelRep& phi_star, int D);

enum class Sl2CheckMode { AllPairs, Generators };

struct Sl2HomVerdict {
  bool ok = true;
  std::string witness;
  std::uint64_t group_order = 0;
  std::uint64_t products_checked = 0;
};

// Exhaustive homomorphism check over SL(2, F_q). AllPairs compares
// psi(A)psi(B) with psi(AB) for every pair; Generators compares it for every
// A and every B in a generating set of elementary matrices, which implies the
// same conclusion. Both also check det psi(A) = 1 and psi(I) = I.
Sl2HomVerdict verify_sl2_hom(const Sl2Formula& psi, std::uint32_t q, Sl2CheckMode mode = Sl2CheckMode::AllPairs);

// Whether psi1 = psi2 on SL(2, F_q). Raises invariant_violation when they
// agree on the Borel subgroup and lower unipotents but not everywhere, or when
// a trivial upper unipotent part comes with a nontrivial torus or lower part.
bool check_psi_uniqueness(const Sl2Formula& psi1, const Sl2Formula& psi2, std::uint32_t q);

struct FundamentalityVerdict {
  bool fundamental = false;
  ClassificationReport report;
  std::optional<Sl2Formula> psi;            // extension of the input phi
  std::optional<Sl2Formula> canonical_psi;  // extension of the canonical form
  std::optional<UMinus> uminus;
  std::optional<std::string> certificate;
  std::optional<UMinusCertificate> uminus_certificate;
};

// Default degree bound 2 p^{e_max} + 1 for the functional-equation solve.
int default_degree_bound(const CanonicalForm& F, unsigned p);

FundamentalityVerdict decide_fundamental(const BorelRep& phi);

}  // namespace brep
