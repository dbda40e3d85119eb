#include "brep/forms.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <tuple>

namespace brep {

long long ipow_ll(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int weight_pattern(const std::array<int, 3>& w) {
  if (w[0] == w[1] && w[1] == w[2]) return 4;
  if (w[0] == w[1]) return 2;
  if (w[1] == w[2]) return 3;
  return 1;
}

bool three_divisibility(unsigned p, int e1, int e2) {
  if (!(e2 > e1 && e1 >= 0)) throw invalid_input("three_divisibility requires e2 > e1 >= 0");
  if (p == 3) return e1 >= 1;
  return p % 3 == 2 && (e2 - e1) % 2 == 1;
}

std::string tag_name(FormTag t) {
  static const char* names[] = {"(I)*", "(II)*", "(III)*", "(IV)*", "(V)*", "(VI)*",
                                "(VII)*", "(VIII)*", "(IX)*", "(X)*", "(XI)*", "(XII)*"};
  return names[static_cast<int>(t) - 1];
}

FormTag parse_tag(const std::string& s) {
  for (int i = 1; i <= 12; ++i) {
    auto t = static_cast<FormTag>(i);
    std::string n = tag_name(t);
    if (s == n || s == n.substr(1, n.size() - 3)) return t;
  }
  throw invalid_input("unknown form tag " + s);
}

bool CanonicalForm::operator<(const CanonicalForm& o) const {
  return std::tie(tag, weights, e1, e2) < std::tie(o.tag, o.weights, o.e1, o.e2);
}

std::vector<std::pair<std::string, int>> CanonicalForm::payload() const {
  const auto& l = weights;
  switch (tag) {
    case FormTag::I:
      return {{"e1", e1}};
    case FormTag::II:
      return {{"l1", l[0]}, {"l2", l[1]}, {"l3", l[2]}};
    case FormTag::III:
    case FormTag::VI:
      return {{"l1", l[0]}, {"l2", l[1]}, {"l3", l[2]}, {"e1", e1}};
    case FormTag::IV:
      return {{"l1", l[0]}, {"l2", l[1]}, {"l3", l[2]}, {"e2", e2}};
    case FormTag::V:
    case FormTag::VII:
      return {{"e1", e1}, {"e2", e2}};
    case FormTag::VIII:
      return {{"l1", l[0]}, {"l3", l[2]}};
    case FormTag::IX:
      return {{"l1", l[0]}, {"l3", l[2]}, {"e1", e1}};
    case FormTag::X:
      return {{"l1", l[0]}, {"l2", l[1]}};
    case FormTag::XI:
      return {{"l1", l[0]}, {"l2", l[1]}, {"e1", e1}};
    case FormTag::XII:
      return {};
  }
  return {};
}

std::string CanonicalForm::tag_name() const { return brep::tag_name(tag); }

std::string CanonicalForm::payload_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : payload()) {
    if (!first) os << ' ';
    first = false;
    os << k << '=' << v;
  }
  return os.str();
}

std::string CanonicalForm::to_string() const {
  std::string p = payload_string();
  return p.empty() ? tag_name() : tag_name() + " " + p;
}

namespace {

void require(bool cond, const CanonicalForm& F, const std::string& why) {
  if (!cond) throw invalid_input("inadmissible " + F.tag_name() + " payload: " + why);
}

bool strict(const std::array<int, 3>& l) { return l[0] > l[1] && l[1] > l[2]; }
int sum(const std::array<int, 3>& l) { return l[0] + l[1] + l[2]; }

}  // namespace

void CanonicalForm::validate(unsigned p) const {
  const auto& l = weights;
  const auto& F = *this;
  require(sum(l) == 0, F, "weights must sum to zero");
  auto q = [&](int e) { return ipow_ll(p, e); };
  switch (tag) {
    case FormTag::I:
      require(p >= 3, F, "requires p >= 3");
      require(e1 >= 0 && e2 == -1, F, "needs e1 >= 0");
      require(l == std::array<int, 3>{int(2 * q(e1)), 0, int(-2 * q(e1))}, F, "weights must be (2p^e1, 0, -2p^e1)");
      break;
    case FormTag::II:
      require(strict(l) && e1 == -1 && e2 == -1, F, "weights must be strictly decreasing");
      break;
    case FormTag::III:
      require(strict(l) && e1 >= 0 && e2 == -1, F, "strict weights and e1 >= 0");
      require(l[0] - l[1] == 2 * q(e1), F, "l1 - l2 must equal 2p^e1");
      break;
    case FormTag::IV:
      require(strict(l) && e2 >= 0 && e1 == -1, F, "strict weights and e2 >= 0");
      require(l[0] - l[2] == 2 * q(e2), F, "l1 - l3 must equal 2p^e2");
      break;
    case FormTag::V: {
      require(e2 > e1 && e1 >= 0, F, "needs e2 > e1 >= 0");
      require(three_divisibility(p, e1, e2), F, "weights are not integral");
      long long a = q(e1), b = q(e2);
      require(l == std::array<int, 3>{int((2 * a + 2 * b) / 3), int((-4 * a + 2 * b) / 3), int((2 * a - 4 * b) / 3)},
              F, "weights must follow the (V)* formula");
      break;
    }
    case FormTag::VI:
      require(strict(l) && e1 >= 0 && e2 == -1, F, "strict weights and e1 >= 0");
      require(l[1] - l[2] == 2 * q(e1), F, "l2 - l3 must equal 2p^e1");
      break;
    case FormTag::VII: {
      require(e2 > e1 && e1 >= 0, F, "needs e2 > e1 >= 0");
      require(three_divisibility(p, e1, e2), F, "weights are not integral");
      long long a = q(e1), b = q(e2);
      require(l == std::array<int, 3>{int((-2 * a + 4 * b) / 3), int((4 * a - 2 * b) / 3), int((-2 * a - 2 * b) / 3)},
              F, "weights must follow the (VII)* formula");
      break;
    }
    case FormTag::VIII:
      require(l[0] == l[1] && l[0] > 0 && e1 == -1 && e2 == -1, F, "needs l1 = l2 > 0");
      break;
    case FormTag::IX:
      require(l[0] == l[1] && l[0] > 0 && e1 >= 0 && e2 == -1, F, "needs l1 = l2 > 0 and e1 >= 0");
      require(l[0] - l[2] == 2 * q(e1), F, "l1 - l3 must equal 2p^e1");
      break;
    case FormTag::X:
      require(l[1] == l[2] && l[0] > 0 && e1 == -1 && e2 == -1, F, "needs l1 > 0 > l2 = l3");
      break;
    case FormTag::XI:
      require(l[1] == l[2] && l[0] > 0 && e1 >= 0 && e2 == -1, F, "needs l2 = l3 and e1 >= 0");
      require(l[0] - l[1] == 2 * q(e1), F, "l1 - l2 must equal 2p^e1");
      break;
    case FormTag::XII:
      require(l == std::array<int, 3>{0, 0, 0} && e1 == -1 && e2 == -1, F, "weights must vanish");
      break;
  }
}

CanonicalForm CanonicalForm::make_I(unsigned p, int e1) {
  int a = static_cast<int>(2 * ipow_ll(p, e1));
  CanonicalForm F{FormTag::I, {a, 0, -a}, e1, -1};
  F.validate(p);
  return F;
}
CanonicalForm CanonicalForm::make_II(const std::array<int, 3>& l) {
  CanonicalForm F{FormTag::II, l, -1, -1};
  F.validate(2);
  return F;
}
CanonicalForm CanonicalForm::make_III(unsigned p, const std::array<int, 3>& l, int e1) {
  CanonicalForm F{FormTag::III, l, e1, -1};
  F.validate(p);
  return F;
}
CanonicalForm CanonicalForm::make_IV(unsigned p, const std::array<int, 3>& l, int e2) {
  CanonicalForm F{FormTag::IV, l, -1, e2};
  F.validate(p);
  return F;
}
CanonicalForm CanonicalForm::make_V(unsigned p, int e1, int e2) {
  if (!(e2 > e1 && e1 >= 0) || !three_divisibility(p, e1, e2)) {
    throw invalid_input("inadmissible (V)* payload: weights are not integral");
  }
  long long a = ipow_ll(p, e1), b = ipow_ll(p, e2);
  CanonicalForm F{FormTag::V, {int((2 * a + 2 * b) / 3), int((-4 * a + 2 * b) / 3), int((2 * a - 4 * b) / 3)}, e1, e2};
  F.validate(p);
  return F;
}
CanonicalForm CanonicalForm::make_VI(unsigned p, const std::array<int, 3>& l, int e1) {
  CanonicalForm F{FormTag::VI, l, e1, -1};
  F.validate(p);
  return F;
}
CanonicalForm CanonicalForm::make_VII(unsigned p, int e1, int e2) {
  if (!(e2 > e1 && e1 >= 0) || !three_divisibility(p, e1, e2)) {
    throw invalid_input("inadmissible (VII)* payload: weights are not integral");
  }
  long long a = ipow_ll(p, e1), b = ipow_ll(p, e2);
  CanonicalForm F{FormTag::VII, {int((-2 * a + 4 * b) / 3), int((4 * a - 2 * b) / 3), int((-2 * a - 2 * b) / 3)}, e1, e2};
  F.validate(p);
  return F;
}
CanonicalForm CanonicalForm::make_VIII(int l1) {
  CanonicalForm F{FormTag::VIII, {l1, l1, -2 * l1}, -1, -1};
  F.validate(2);
  return F;
}
CanonicalForm CanonicalForm::make_IX(unsigned p, int e1) {
  if (p != 3 || e1 < 1) throw invalid_input("inadmissible (IX)* payload: requires p = 3 and e1 >= 1");
  int a = static_cast<int>(2 * ipow_ll(3, e1 - 1));
  CanonicalForm F{FormTag::IX, {a, a, -2 * a}, e1, -1};
  F.validate(p);
  return F;
}
CanonicalForm CanonicalForm::make_X(int l1) {
  if (l1 % 2 != 0) throw invalid_input("inadmissible (X)* payload: l1 must be even");
  CanonicalForm F{FormTag::X, {l1, -l1 / 2, -l1 / 2}, -1, -1};
  F.validate(2);
  return F;
}
CanonicalForm CanonicalForm::make_XI(unsigned p, int e1) {
  if (p != 3 || e1 < 1) throw invalid_input("inadmissible (XI)* payload: requires p = 3 and e1 >= 1");
  int a = static_cast<int>(2 * ipow_ll(3, e1 - 1));
  CanonicalForm F{FormTag::XI, {2 * a, -a, -a}, e1, -1};
  F.validate(p);
  return F;
}
CanonicalForm CanonicalForm::make_XII() { return CanonicalForm{FormTag::XII, {0, 0, 0}, -1, -1}; }

Mat3<UPoly> canonical_u(const CanonicalForm& F, const Field* f) {
  Mat3<UPoly> u;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) u(i, j) = i == j ? UPoly::one(f) : UPoly(f);
  }
  const unsigned p = f->p();
  auto mono = [&](Fq c, long long deg) { return UPoly::monomial(c, {static_cast<int>(deg)}); };
  auto q = [&](int e) { return ipow_ll(p, e); };
  Fq one = f->one();
  switch (F.tag) {
    case FormTag::I:
      u(0, 1) = mono(one, q(F.e1));
      u(0, 2) = mono(f->from_int(2).inv(), 2 * q(F.e1));
      u(1, 2) = mono(one, q(F.e1));
      break;
    case FormTag::III:
      u(0, 1) = mono(one, q(F.e1));
      break;
    case FormTag::IV:
      u(0, 2) = mono(one, q(F.e2));
      break;
    case FormTag::V:
      u(0, 1) = mono(one, q(F.e1));
      u(0, 2) = mono(one, q(F.e2));
      break;
    case FormTag::VI:
      u(1, 2) = mono(one, q(F.e1));
      break;
    case FormTag::VII:
      u(0, 2) = mono(one, q(F.e2));
      u(1, 2) = mono(one, q(F.e1));
      break;
    case FormTag::IX:
      u(1, 2) = mono(one, q(F.e1));
      break;
    case FormTag::XI:
      u(0, 1) = mono(one, q(F.e1));
      break;
    case FormTag::II:
    case FormTag::VIII:
    case FormTag::X:
    case FormTag::XII:
      break;
  }
  return u;
}

BorelRep instantiate(const CanonicalForm& F, const Field* f) {
  F.validate(f->p());
  return BorelRep::make_unchecked(f, compose_u_h(canonical_u(F, f), F.weights, f));
}

std::vector<CanonicalForm> enumerate_forms(unsigned p, int max_e, int W) {
  std::vector<CanonicalForm> out;
  auto fits = [&](const std::array<int, 3>& l) {
    return std::abs(l[0]) <= W && std::abs(l[1]) <= W && std::abs(l[2]) <= W;
  };
  auto push = [&](const CanonicalForm& F) {
    if (fits(F.weights)) out.push_back(F);
  };
  auto q = [&](int e) { return ipow_ll(p, e); };
  // Distinct weights, parameterized by the smallest weight l3 and the gap l2 - l3.
  auto strict_triples = [&](auto&& fn) {
    for (int l3 = -W; l3 < 0; ++l3) {
      for (int g = 1; 2 * g <= -3 * l3; ++g) {
        // l2 = l3 + g, l1 = -l2 - l3 must exceed l2: -2l3 - g > l3 + g.
        int l2 = l3 + g, l1 = -l2 - l3;
        if (l1 > l2 && l1 <= W) fn(std::array<int, 3>{l1, l2, l3});
      }
    }
  };

  if (p >= 3) {
    for (int e = 0; e <= max_e; ++e) push(CanonicalForm::make_I(p, e));
  }
  strict_triples([&](const std::array<int, 3>& l) { out.push_back(CanonicalForm::make_II(l)); });
  for (int e = 0; e <= max_e; ++e) {
    strict_triples([&](const std::array<int, 3>& l) {
      if (l[0] - l[1] == 2 * q(e)) out.push_back(CanonicalForm{FormTag::III, l, e, -1});
    });
  }
  for (int e = 0; e <= max_e; ++e) {
    strict_triples([&](const std::array<int, 3>& l) {
      if (l[0] - l[2] == 2 * q(e)) out.push_back(CanonicalForm{FormTag::IV, l, -1, e});
    });
  }
  for (int e1 = 0; e1 <= max_e; ++e1) {
    for (int e2 = e1 + 1; e2 <= max_e; ++e2) {
      if (three_divisibility(p, e1, e2)) push(CanonicalForm::make_V(p, e1, e2));
    }
  }
  for (int e = 0; e <= max_e; ++e) {
    strict_triples([&](const std::array<int, 3>& l) {
      if (l[1] - l[2] == 2 * q(e)) out.push_back(CanonicalForm{FormTag::VI, l, e, -1});
    });
  }
  for (int e1 = 0; e1 <= max_e; ++e1) {
    for (int e2 = e1 + 1; e2 <= max_e; ++e2) {
      if (three_divisibility(p, e1, e2)) push(CanonicalForm::make_VII(p, e1, e2));
    }
  }
  for (int l1 = 1; 2 * l1 <= W; ++l1) out.push_back(CanonicalForm::make_VIII(l1));
  if (p == 3) {
    for (int e = 1; e <= max_e; ++e) push(CanonicalForm::make_IX(p, e));
  }
  for (int l1 = 2; l1 <= W; l1 += 2) out.push_back(CanonicalForm::make_X(l1));
  if (p == 3) {
    for (int e = 1; e <= max_e; ++e) push(CanonicalForm::make_XI(p, e));
  }
  out.push_back(CanonicalForm::make_XII());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace brep
