#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brep/fundamental.hpp"
#include "brep/ga_fund.hpp"

namespace brep {

// Lexical, syntactic or semantic error in a representation file, with a
// 1-based position.
class parse_error : public invalid_input {
 public:
  parse_error(int line, int col, const std::string& msg);
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

enum class SourceKind { Borel, GaTriple, Sl2Formula };
std::string kind_name(SourceKind k);

// A parsed file. Exactly one of borel / ga / sl2 is set, matching kind.
// Borel entries are not yet checked to form a homomorphism.
struct RepSource {
  unsigned p = 0, m = 0;
  std::optional<std::vector<unsigned>> modulus;
  SourceKind kind = SourceKind::Borel;
  const Field* field = nullptr;
  std::optional<RepMatrix> borel;
  std::optional<GaTriple> ga;
  std::optional<brep::Sl2Formula> sl2;
};

// Grammar (whitespace-insensitive, '#' starts a comment):
//   file   := header entry+
//   header := "p" "=" uint NL "m" "=" uint NL ("modulus" "=" coefvec NL)?
//             "kind" "=" ident NL
//   entry  := "e" INDEX "=" expr NL   (INDEX 11..33, or a12, a13, a23)
//   expr   := term (("+"|"-") term)*
//   term   := coef ("*" factor)* | factor ("*" factor)*
//   factor := VAR ("^" int)?
//   coef   := uint | "[" uint ("," uint)* "]"
RepSource parse_rep_source(const std::string& text);

std::string serialize_borel(const BorelRep& phi);
std::string serialize_borel(const Field* f, const RepMatrix& m);
std::string serialize_ga(const GaTriple& u);
std::string serialize_sl2(const brep::Sl2Formula& psi);

}  // namespace brep
