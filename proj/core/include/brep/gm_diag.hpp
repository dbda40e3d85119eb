#pragma once

#include <array>
#include <map>

#include "brep/rep.hpp"

namespace brep {

// (l1, l2, l3) with l1 >= l2 >= l3 and l1 + l2 + l3 = 0.
using WeightTuple = std::array<int, 3>;

// h(z) = sum_l A_l z^l. Throws not_a_homomorphism unless the A_l are
// orthogonal idempotents summing to the identity.
std::map<int, FMat> fourier_components(const GmRep& h);

struct Diagonalization {
  FMat P;
  WeightTuple weights;
};

// P^{-1} h(z) P = diag(z^l1, z^l2, z^l3), weights descending. For each
// weight the columns are the reduced column echelon basis of the image of
// A_l, ordered by pivot row.
Diagonalization diagonalize_gm(const GmRep& h);

}  // namespace brep
