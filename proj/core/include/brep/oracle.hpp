#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "brep/rep.hpp"

namespace brep {

struct OracleReport {
  bool passed = false;
  std::optional<std::string> witness;
  std::uint64_t search_space_size = 0;
  std::uint64_t cases_checked = 0;
  std::optional<FMat> conjugator;  // conjugator_search only, over F_{q^ext}
};

// phi(g1) phi(g2) = phi(g1 g2) for all g1, g2 in F_q x F_q^* under the Borel
// group law, with coefficients embedded into F_q.
OracleReport pointwise_hom_check(const BorelRep& phi, std::uint32_t q);

// Looks for P in GL(3, F_{q^ext}) with P^-1 phi1(g) P = phi2(g) at every
// point g of the Borel group over F_{q^ext}. Candidates are the invertible
// elements of the space cut out by the pointwise equations together with
// the per-monomial ones, tried in order of increasing support in its
// echelon basis; a candidate is accepted only if it also intertwines
// symbolically. passed = false means "not found at this
// field size", never "inequivalent". Throws invalid_input unless q <= 4 for
// ext = 1 or q <= 3 for ext = 2.
OracleReport conjugator_search(const BorelRep& phi1, const BorelRep& phi2, std::uint32_t q, int ext);

// [[1,1],[0,1]] [[1,0],[g,1]] = [[1,0],[g/(1+g),1]] diag(1+g, 1/(1+g))
// [[1,1/(1+g)],[0,1]], checked by direct multiplication for every g in F_q
// other than -1.
OracleReport bruhat_factorization_check(std::uint32_t q);

}  // namespace brep
