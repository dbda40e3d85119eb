#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "brep/rep.hpp"

namespace brep {

enum class FormTag { I = 1, II, III, IV, V, VI, VII, VIII, IX, X, XI, XII };

// Weight patterns: 1 = distinct, 2 = top pair equal, 3 = bottom pair equal,
// 4 = all zero.
int weight_pattern(const std::array<int, 3>& w);

// One of the twelve canonical Borel representation families. `weights` is
// always filled; e1/e2 are -1 when the family has no such index.
struct CanonicalForm {
  FormTag tag = FormTag::XII;
  std::array<int, 3> weights{0, 0, 0};
  int e1 = -1;
  int e2 = -1;

  bool operator==(const CanonicalForm& o) const {
    return tag == o.tag && weights == o.weights && e1 == o.e1 && e2 == o.e2;
  }
  bool operator!=(const CanonicalForm& o) const { return !(*this == o); }
  bool operator<(const CanonicalForm& o) const;

  // Tag-specific payload as (name, value) pairs, e.g. {("e1", 0)} for (I)*.
  std::vector<std::pair<std::string, int>> payload() const;
  std::string tag_name() const;   // "(I)*"
  std::string payload_string() const;  // "e1=0"
  std::string to_string() const;  // "(I)* e1=0"

  // Throws invalid_input when the payload is inadmissible for characteristic p.
  void validate(unsigned p) const;

  static CanonicalForm make_I(unsigned p, int e1);
  static CanonicalForm make_II(const std::array<int, 3>& l);
  static CanonicalForm make_III(unsigned p, const std::array<int, 3>& l, int e1);
  static CanonicalForm make_IV(unsigned p, const std::array<int, 3>& l, int e2);
  static CanonicalForm make_V(unsigned p, int e1, int e2);
  static CanonicalForm make_VI(unsigned p, const std::array<int, 3>& l, int e1);
  static CanonicalForm make_VII(unsigned p, int e1, int e2);
  static CanonicalForm make_VIII(int l1);
  static CanonicalForm make_IX(unsigned p, int e1);
  static CanonicalForm make_X(int l1);
  static CanonicalForm make_XI(unsigned p, int e1);
  static CanonicalForm make_XII();
};

std::string tag_name(FormTag t);
FormTag parse_tag(const std::string& s);

long long ipow_ll(long long b, int e);

// Whether (2p^e1 + 2p^e2)/3 is an integer, by the congruence rule: p = 3 with
// e1 >= 1, or p = 2 mod 3 with e2 - e1 odd. Requires e2 > e1 >= 0. For p = 3
// and e1 = 0 the numerator is 2 mod 3, so the bare condition p = 3 is not
// enough.
bool three_divisibility(unsigned p, int e1, int e2);

// The unipotent part u*(t) of a canonical form.
Mat3<UPoly> canonical_u(const CanonicalForm& F, const Field* f);
// phi*(t, z) = u*(t) diag(z^l).
BorelRep instantiate(const CanonicalForm& F, const Field* f);

// All canonical form instances with |l_i| <= max_weight and Frobenius
// indices <= max_e, ordered by tag then payload.
std::vector<CanonicalForm> enumerate_forms(unsigned p, int max_e, int max_weight);

}  // namespace brep
