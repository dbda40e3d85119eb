#include "brep/text_format.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace brep {

parse_error::parse_error(int line, int col, const std::string& msg)
    : invalid_input("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
      line_(line),
      col_(col) {}

std::string kind_name(SourceKind k) {
  switch (k) {
    case SourceKind::Borel:
      return "borel";
    case SourceKind::GaTriple:
      return "ga-triple";
    case SourceKind::Sl2Formula:
      return "sl2-formula";
  }
  return "?";
}

namespace {

using Key4 = std::array<int, 4>;
using Terms4 = std::map<Key4, Fq>;

struct Line {
  int number;
  std::string text;  // comment stripped
};

// Cursor over one line; columns are 1-based.
class Cursor {
 public:
  Cursor(const Line& l) : line_(l) {}

  void skip_ws() {
    while (pos_ < line_.text.size() && std::isspace(static_cast<unsigned char>(line_.text[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= line_.text.size();
  }
  char peek() {
    skip_ws();
    return pos_ < line_.text.size() ? line_.text[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'" + found());
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < line_.text.size()) {
      char c = line_.text[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    if (start == pos_) fail("expected an identifier" + found());
    return line_.text.substr(start, pos_ - start);
  }
  unsigned long long uint() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an unsigned integer" + found());
    unsigned long long v = 0;
    while (pos_ < line_.text.size() && std::isdigit(static_cast<unsigned char>(line_.text[pos_]))) {
      v = v * 10 + (line_.text[pos_] - '0');
      if (v > 1000000000000ULL) fail("integer too large");
      ++pos_;
    }
    return v;
  }
  long long sint() {
    bool neg = accept('-');
    long long v = static_cast<long long>(uint());
    if (v > 1000000) fail("exponent too large");
    return neg ? -v : v;
  }
  int col() {
    skip_ws();
    return static_cast<int>(pos_) + 1;
  }
  [[noreturn]] void fail(const std::string& msg) { throw parse_error(line_.number, col(), msg); }
  [[noreturn]] void fail_at(int col, const std::string& msg) { throw parse_error(line_.number, col, msg); }
  std::string found() {
    if (at_end()) return ", found end of line";
    return std::string(", found '") + line_.text[pos_] + "'";
  }
  int line() const { return line_.number; }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream is(text);
  std::string s;
  int n = 0;
  while (std::getline(is, s)) {
    ++n;
    auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    if (!s.empty() && s.back() == '\r') s.pop_back();
    bool blank = true;
    for (char c : s) {
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    }
    if (!blank) out.push_back({n, s});
  }
  return out;
}

struct VarSpec {
  std::string names;  // one letter per slot
  int negative_slot;  // slot allowed negative exponents, or -1
};

VarSpec vars_for(SourceKind k) {
  switch (k) {
    case SourceKind::Borel:
      return {"tz", 1};
    case SourceKind::GaTriple:
      return {"t", -1};
    case SourceKind::Sl2Formula:
      return {"abcd", -1};
  }
  return {"", -1};
}

Fq parse_coef(Cursor& c, const Field* f) {
  if (c.accept('[')) {
    int col = c.col();
    std::vector<unsigned> digits;
    do {
      digits.push_back(static_cast<unsigned>(c.uint() % f->p()));
    } while (c.accept(','));
    c.expect(']');
    if (digits.size() != f->m()) {
      c.fail_at(col, "coefficient vector has length " + std::to_string(digits.size()) + " but m = " + std::to_string(f->m()));
    }
    return f->from_coeffs(digits);
  }
  return f->from_int(static_cast<long long>(c.uint() % f->p()));
}

Terms4 parse_expr(Cursor& c, const Field* f, const VarSpec& vs) {
  Terms4 out;
  auto add = [&](const Key4& k, Fq v) {
    if (v.is_zero()) return;
    auto it = out.find(k);
    if (it == out.end()) {
      out.emplace(k, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  bool negate = false;
  while (true) {
    Fq coef = f->one();
    Key4 k{};
    bool need_factor = true;
    char ch = c.peek();
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '[') {
      coef = parse_coef(c, f);
      need_factor = false;
    }
    while (true) {
      if (!need_factor && !c.accept('*')) break;
      int col = c.col();
      char v = c.peek();
      auto slot = vs.names.find(v);
      if (!std::isalpha(static_cast<unsigned char>(v))) c.fail("expected a coefficient or variable" + c.found());
      if (slot == std::string::npos) c.fail("variable '" + std::string(1, v) + "' is not allowed in this kind of file");
      c.accept(v);
      if (std::isalnum(static_cast<unsigned char>(c.peek())) && c.col() == col + 1) {
        c.fail("unknown variable starting with '" + std::string(1, v) + "'");
      }
      long long e = 1;
      if (c.accept('^')) {
        int ecol = c.col();
        e = c.sint();
        if (e < 0 && static_cast<int>(slot) != vs.negative_slot) {
          c.fail_at(ecol, std::string("negative exponent of ") + v + " is not allowed");
        }
      }
      k[slot] += static_cast<int>(e);
      need_factor = false;
    }
    add(k, negate ? -coef : coef);
    if (c.accept('+')) {
      negate = false;
    } else if (c.accept('-')) {
      negate = true;
    } else {
      break;
    }
  }
  if (!c.at_end()) c.fail("unexpected input" + c.found());
  return out;
}

template <class P>
P to_poly(const Terms4& t, const Field* f) {
  P r(f);
  for (const auto& [k, c] : t) {
    typename P::Key key{};
    for (std::size_t i = 0; i < key.size(); ++i) key[i] = k[i];
    r.add_term(key, c);
  }
  return r;
}

std::string header_value(const std::vector<Line>& lines, std::size_t& i, const std::string& name, bool optional) {
  if (i >= lines.size()) {
    if (optional) return {};
    int ln = lines.empty() ? 1 : lines.back().number + 1;
    throw parse_error(ln, 1, "missing header field '" + name + "'");
  }
  Cursor c(lines[i]);
  int col = c.col();
  std::string got = c.ident();
  if (got != name) {
    if (optional) return {};
    c.fail_at(col, "expected header field '" + name + "', found '" + got + "'");
  }
  c.expect('=');
  ++i;
  return "ok";
}

}  // namespace

RepSource parse_rep_source(const std::string& text) {
  std::vector<Line> lines = split_lines(text);
  RepSource src;
  std::size_t i = 0;

  header_value(lines, i, "p", false);
  {
    Cursor c(lines[i - 1]);
    c.ident();
    c.expect('=');
    int col = c.col();
    unsigned long long p = c.uint();
    if (!c.at_end()) c.fail("unexpected input" + c.found());
    if (p > 1000000 || !Field::is_prime(static_cast<unsigned>(p))) c.fail_at(col, "p = " + std::to_string(p) + " is not prime");
    src.p = static_cast<unsigned>(p);
  }
  header_value(lines, i, "m", false);
  {
    Cursor c(lines[i - 1]);
    c.ident();
    c.expect('=');
    int col = c.col();
    unsigned long long m = c.uint();
    if (!c.at_end()) c.fail("unexpected input" + c.found());
    if (m < 1 || m > Field::kMaxDegree) c.fail_at(col, "m must be between 1 and " + std::to_string(Field::kMaxDegree));
    src.m = static_cast<unsigned>(m);
  }
  if (!header_value(lines, i, "modulus", true).empty()) {
    Cursor c(lines[i - 1]);
    c.ident();
    c.expect('=');
    c.expect('[');
    std::vector<unsigned> mod;
    do {
      int col = c.col();
      unsigned long long x = c.uint();
      if (x >= src.p) c.fail_at(col, "modulus coefficient out of range");
      mod.push_back(static_cast<unsigned>(x));
    } while (c.accept(','));
    c.expect(']');
    if (!c.at_end()) c.fail("unexpected input" + c.found());
    src.modulus = mod;
  }
  header_value(lines, i, "kind", false);
  {
    Cursor c(lines[i - 1]);
    c.ident();
    c.expect('=');
    int col = c.col();
    std::string k = c.ident();
    if (!c.at_end()) c.fail("unexpected input" + c.found());
    if (k == "borel") {
      src.kind = SourceKind::Borel;
    } else if (k == "ga-triple") {
      src.kind = SourceKind::GaTriple;
    } else if (k == "sl2-formula") {
      src.kind = SourceKind::Sl2Formula;
    } else {
      c.fail_at(col, "unknown kind '" + k + "'");
    }
  }
  try {
    src.field = Field::get(src.p, src.m, src.modulus.value_or(std::vector<unsigned>{}));
  } catch (const invalid_input& e) {
    throw parse_error(lines[i - 1].number, 1, e.what());
  }

  const VarSpec vs = vars_for(src.kind);
  std::vector<std::string> names;
  if (src.kind == SourceKind::GaTriple) {
    names = {"a12", "a13", "a23"};
  } else {
    names = {"e11", "e12", "e13", "e21", "e22", "e23", "e31", "e32", "e33"};
  }
  std::map<std::string, Terms4> entries;
  if (i >= lines.size()) throw parse_error(lines.empty() ? 1 : lines.back().number + 1, 1, "no entries");
  for (; i < lines.size(); ++i) {
    Cursor c(lines[i]);
    int col = c.col();
    std::string name = c.ident();
    if (src.kind == SourceKind::GaTriple && name.size() == 4 && name[0] == 'e') name = name.substr(1);
    bool known = false;
    for (const auto& n : names) known = known || n == name;
    if (!known) c.fail_at(col, "unknown entry '" + name + "' for kind " + kind_name(src.kind));
    if (entries.count(name)) c.fail_at(col, "duplicate entry '" + name + "'");
    c.expect('=');
    entries[name] = parse_expr(c, src.field, vs);
  }
  for (const auto& n : names) {
    if (!entries.count(n)) throw parse_error(lines.back().number + 1, 1, "missing entry '" + n + "'");
  }

  const Field* f = src.field;
  if (src.kind == SourceKind::GaTriple) {
    src.ga = GaTriple{to_poly<UPoly>(entries["a12"], f), to_poly<UPoly>(entries["a13"], f), to_poly<UPoly>(entries["a23"], f)};
  } else if (src.kind == SourceKind::Borel) {
    RepMatrix m;
    for (int r = 0; r < 3; ++r) {
      for (int s = 0; s < 3; ++s) m(r, s) = to_poly<BiLaurent>(entries[names[r * 3 + s]], f);
    }
    src.borel = m;
  } else {
    brep::Sl2Formula psi{f, {}};
    for (int r = 0; r < 3; ++r) {
      for (int s = 0; s < 3; ++s) psi.m(r, s) = to_poly<AbcdPoly>(entries[names[r * 3 + s]], f);
    }
    src.sl2 = psi;
  }
  return src;
}

namespace {

std::string header(const Field* f, SourceKind k) {
  std::ostringstream os;
  os << "p = " << f->p() << "\n";
  os << "m = " << f->m() << "\n";
  if (f->m() > 1) {
    os << "modulus = [";
    for (std::size_t i = 0; i < f->modulus().size(); ++i) os << (i ? "," : "") << f->modulus()[i];
    os << "]\n";
  }
  os << "kind = " << kind_name(k) << "\n";
  return os.str();
}

template <class R>
std::string entries9(const Mat3<R>& m) {
  std::ostringstream os;
  for (int r = 0; r < 3; ++r) {
    for (int s = 0; s < 3; ++s) os << "e" << r + 1 << s + 1 << " = " << m(r, s).to_string() << "\n";
  }
  return os.str();
}

}  // namespace

std::string serialize_borel(const Field* f, const RepMatrix& m) { return header(f, SourceKind::Borel) + entries9(m); }

std::string serialize_borel(const BorelRep& phi) { return serialize_borel(phi.field(), phi.entries()); }

std::string serialize_ga(const GaTriple& u) {
  std::ostringstream os;
  os << header(u.field(), SourceKind::GaTriple);
  os << "a12 = " << u.a12.to_string() << "\n";
  os << "a13 = " << u.a13.to_string() << "\n";
  os << "a23 = " << u.a23.to_string() << "\n";
  return os.str();
}

std::string serialize_sl2(const brep::Sl2Formula& psi) { return header(psi.field, SourceKind::Sl2Formula) + entries9(psi.m); }

}  // namespace brep
