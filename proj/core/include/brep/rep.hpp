#pragma once

#include <optional>
#include <string>
#include <utility>

#include "brep/mat3.hpp"
#include "brep/poly.hpp"

namespace brep {

using RepMatrix = Mat3<BiLaurent>;

struct HomVerdict {
  bool ok = true;
  std::string reason;
  // 0-based entry of the first failure, when the failure is entry-wise.
  int row = -1, col = -1;
  std::string monomial;
};

// A morphism phi(t, z) from the Borel group G_a x| G_m into SL(3), given by
// its 3x3 matrix of polynomials in t and Laurent polynomials in z.
class BorelRep {
 public:
  // Throws not_a_homomorphism when the product law, phi(0,1) = I or
  // det = 1 fails.
  static BorelRep make(const Field* f, RepMatrix m);
  static BorelRep make_unchecked(const Field* f, RepMatrix m);

  const Field* field() const { return f_; }
  const RepMatrix& entries() const { return m_; }
  const BiLaurent& operator()(int i, int j) const { return m_(i, j); }
  bool operator==(const BorelRep& o) const { return f_ == o.f_ && m_ == o.m_; }

 private:
  BorelRep(const Field* f, RepMatrix m) : f_(f), m_(std::move(m)) {}
  const Field* f_;
  RepMatrix m_;
};

HomVerdict verify_borel_homomorphism(const BorelRep& phi);

// h(z) = phi(0, z): entries have t-degree 0.
struct GmRep {
  const Field* field;
  RepMatrix m;
};
// u(t) = phi(t, 1).
struct GaRep {
  const Field* field;
  Mat3<UPoly> m;
};

std::pair<GmRep, GaRep> restrict_components(const BorelRep& phi);

// P^{-1} phi P; the result is checked only when `checked` is set.
BorelRep conjugate(const BorelRep& phi, const FMat& P, bool checked = true);

// Rebuilds a representation from diagonal weights and a unipotent upper
// triangular u: phi(t, z) = u(t) diag(z^l1, z^l2, z^l3).
RepMatrix compose_u_h(const Mat3<UPoly>& u, const std::array<int, 3>& weights, const Field* f);

// Largest |z-degree| and largest t-degree over all entries.
int max_abs_z_degree(const RepMatrix& m);
int max_t_degree(const RepMatrix& m);

// Moves all coefficients into a larger field of the same characteristic.
RepMatrix embed_matrix(const RepMatrix& m, const Embedding& emb);

}  // namespace brep
