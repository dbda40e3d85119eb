#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "brep/classify.hpp"
#include "brep/fundamental.hpp"
#include "brep/ga_fund.hpp"
#include "brep/text_format.hpp"
#include "selftest.hpp"

using namespace brep;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInvalid = 2, kInternal = 3 };

// A well-formed input whose answer is "no".
struct Negative {
  std::string message;
};

RepSource load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_rep_source(ss.str());
  } catch (const parse_error& e) {
    throw invalid_input(path + ": " + e.what());
  }
}

BorelRep load_borel(const std::string& path) {
  RepSource src = load(path);
  if (src.kind != SourceKind::Borel) throw invalid_input(path + ": expected kind = borel, got " + kind_name(src.kind));
  BorelRep phi = BorelRep::make_unchecked(src.field, *src.borel);
  HomVerdict v = verify_borel_homomorphism(phi);
  if (!v.ok) throw Negative{path + ": not a homomorphism: " + v.reason};
  return phi;
}

json matrix_json(const FMat& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

json payload_json(const CanonicalForm& F) {
  json o = json::object();
  for (const auto& [k, v] : F.payload()) o[k] = v;
  return o;
}

json report_json(const std::string& verdict) {
  return json{{"verdict", verdict}, {"case", nullptr},       {"form", nullptr},
              {"payload", nullptr}, {"conjugator", nullptr}, {"certificate", nullptr}};
}

void print_lines(const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [k, v] : kv) std::cout << k << ": " << v << "\n";
}

int cmd_verify(const std::string& path) {
  RepSource src = load(path);
  switch (src.kind) {
    case SourceKind::Borel: {
      HomVerdict v = verify_borel_homomorphism(BorelRep::make_unchecked(src.field, *src.borel));
      if (!v.ok) throw Negative{"not a homomorphism: " + v.reason};
      break;
    }
    case SourceKind::GaTriple:
      try {
        check_ga_triple(*src.ga);
      } catch (const not_a_homomorphism& e) {
        throw Negative{std::string("not a homomorphism: ") + e.what()};
      }
      break;
    case SourceKind::Sl2Formula: {
      const std::uint32_t q = src.field->q();
      Sl2HomVerdict v = verify_sl2_hom(*src.sl2, q, std::uint64_t(q) * q * q <= 1000 ? Sl2CheckMode::AllPairs
                                                                                    : Sl2CheckMode::Generators);
      if (!v.ok) throw Negative{"not a homomorphism over F_" + std::to_string(q) + ": " + v.witness};
      break;
    }
  }
  std::cout << "homomorphism (" << kind_name(src.kind) << " over " << src.field->describe() << ")\n";
  return kOk;
}

int cmd_classify(const std::string& path, bool as_json) {
  BorelRep phi = load_borel(path);
  ClassificationReport r = normalize_to_canonical(phi);
  if (as_json) {
    json o = report_json("classified");
    o["case"] = r.case_label.to_string();
    o["form"] = r.form.tag_name();
    o["payload"] = payload_json(r.form);
    o["conjugator"] = matrix_json(r.conjugator);
    std::cout << o.dump() << "\n";
    return kOk;
  }
  print_lines({{"case", r.case_label.to_string()},
               {"form", r.form.to_string()},
               {"tag", r.form.tag_name()},
               {"payload", r.form.payload_string()},
               {"conjugator", to_string(r.conjugator)}});
  return kOk;
}

int cmd_equiv(const std::string& a, const std::string& b, bool as_json) {
  BorelRep phi1 = load_borel(a), phi2 = load_borel(b);
  EquivalenceResult r = test_equivalence(phi1, phi2);
  if (as_json) {
    json o = report_json(r.equivalent ? "equivalent" : "not equivalent");
    o["form"] = json::array({r.form1.tag_name(), r.form2.tag_name()});
    o["payload"] = json::array({payload_json(r.form1), payload_json(r.form2)});
    if (r.conjugator) o["conjugator"] = matrix_json(*r.conjugator);
    std::cout << o.dump() << "\n";
    return r.equivalent ? kOk : kNegative;
  }
  std::cout << (r.equivalent ? "equivalent" : "not equivalent") << "\n";
  print_lines({{"form1", r.form1.to_string()}, {"form2", r.form2.to_string()}});
  if (r.conjugator) print_lines({{"conjugator", to_string(*r.conjugator)}});
  return r.equivalent ? kOk : kNegative;
}

struct Decision {
  bool fundamental = false;
  std::string case_label, form;
  CanonicalForm canonical;
  FMat conjugator;
  std::optional<Sl2Formula> psi;
  std::optional<std::string> certificate;
  std::vector<std::pair<std::string, std::string>> extra;
};

Decision decide(const std::string& path) {
  RepSource src = load(path);
  Decision d;
  if (src.kind == SourceKind::Borel) {
    BorelRep phi = load_borel(path);
    FundamentalityVerdict v = decide_fundamental(phi);
    d.fundamental = v.fundamental;
    d.case_label = v.report.case_label.to_string();
    d.canonical = v.report.form;
    d.form = v.report.form.to_string();
    d.conjugator = v.report.conjugator;
    d.psi = v.psi;
    d.certificate = v.certificate;
    return d;
  }
  if (src.kind == SourceKind::GaTriple) {
    GaVerdict v;
    try {
      v = decide_ga_fundamental(*src.ga);
    } catch (const not_a_homomorphism& e) {
      throw Negative{std::string("not a homomorphism: ") + e.what()};
    }
    d.fundamental = v.fundamental;
    d.case_label = v.condition;
    if (v.borel_form) {
      d.canonical = *v.borel_form;
      d.form = v.borel_form->to_string();
    }
    d.conjugator = v.conjugator;
    d.psi = v.psi;
    if (!v.fundamental) d.certificate = "not conjugate to any normal form E13 T^q, the paired-entry forms, or I";
    if (v.e) d.extra.push_back({"e", std::to_string(*v.e)});
    if (v.fundamental) d.extra.push_back({"normal form", to_string(v.u_sharp)});
    if (v.outside_listed_conditions) d.extra.push_back({"note", "extra T^(p^e) term in a13 beyond the listed condition"});
    return d;
  }
  throw invalid_input(path + ": expected kind = borel or ga-triple, got " + kind_name(src.kind));
}

int cmd_fundamental(const std::string& path, bool as_json) {
  Decision d = decide(path);
  if (as_json) {
    json o = report_json(d.fundamental ? "fundamental" : "not fundamental");
    if (!d.case_label.empty()) o["case"] = d.case_label;
    if (!d.form.empty()) {
      o["form"] = d.canonical.tag_name();
      o["payload"] = payload_json(d.canonical);
    }
    if (d.fundamental || !d.form.empty()) o["conjugator"] = matrix_json(d.conjugator);
    if (d.certificate) o["certificate"] = *d.certificate;
    std::cout << o.dump() << "\n";
    return d.fundamental ? kOk : kNegative;
  }
  std::cout << (d.fundamental ? "fundamental" : "not fundamental") << "\n";
  if (!d.case_label.empty()) print_lines({{"case", d.case_label}});
  if (!d.form.empty()) print_lines({{"form", d.form}});
  print_lines(d.extra);
  if (d.certificate) print_lines({{"certificate", *d.certificate}});
  if (d.psi) std::cout << "extension:\n" << serialize_sl2(*d.psi);
  return d.fundamental ? kOk : kNegative;
}

int cmd_extend(const std::string& path, const std::string& out) {
  Decision d = decide(path);
  if (!d.fundamental) throw Negative{"not fundamental: " + d.certificate.value_or("")};
  std::ofstream os(out);
  if (!os) throw invalid_input("cannot write " + out);
  os << serialize_sl2(*d.psi);
  std::cout << "wrote extension to " << out << "\n";
  return kOk;
}

int cmd_ga_fundamental(const std::string& path, bool as_json) {
  RepSource src = load(path);
  if (src.kind != SourceKind::GaTriple) throw invalid_input(path + ": expected kind = ga-triple");
  return cmd_fundamental(path, as_json);
}

int cmd_enumerate(unsigned p, unsigned m, int max_e, int max_w) {
  if (!Field::is_prime(p)) throw invalid_input("p must be prime");
  if (max_e < 0 || max_w < 0) throw invalid_input("bounds must be non-negative");
  Field::get(p, m);
  std::cout << catalog_tsv(enumerate_classes(p, m, max_e, max_w));
  return kOk;
}

int cmd_selftest(bool deep) {
  bool ok = true;
  for (int id = 1; id <= selftest::kCriteria; ++id) {
    selftest::CriterionResult r = selftest::run_criterion(id, {deep});
    std::cout << selftest::format_line(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Borel representations into SL(3) in positive characteristic"};
  app.require_subcommand(1);
  std::string file, file2, out;
  bool as_json = false, deep = false;
  unsigned p = 0, m = 1;
  int max_e = 0, max_w = 0;

  auto* verify = app.add_subcommand("verify", "Check that a file describes a homomorphism");
  verify->add_option("file", file)->required();
  auto* classify = app.add_subcommand("classify", "Reduce a Borel representation to its canonical form");
  classify->add_option("file", file)->required();
  classify->add_flag("--json", as_json, "Emit one JSON object");
  auto* equiv = app.add_subcommand("equiv", "Decide whether two Borel representations are conjugate");
  equiv->add_option("file1", file)->required();
  equiv->add_option("file2", file2)->required();
  equiv->add_flag("--json", as_json, "Emit one JSON object");
  auto* fundamental = app.add_subcommand("fundamental", "Decide whether a representation extends to SL(2)");
  fundamental->add_option("file", file)->required();
  fundamental->add_flag("--json", as_json, "Emit one JSON object");
  auto* extend = app.add_subcommand("extend", "Write the SL(2) extension in sl2-formula format");
  extend->add_option("file", file)->required();
  extend->add_option("-o,--output", out, "Output file")->required();
  auto* ga = app.add_subcommand("ga-fundamental", "Decide fundamentality of a G_a representation");
  ga->add_option("file", file)->required();
  ga->add_flag("--json", as_json, "Emit one JSON object");
  auto* enumerate = app.add_subcommand("enumerate", "List canonical forms as TSV");
  enumerate->add_option("--p", p, "Characteristic")->required();
  enumerate->add_option("--m", m, "Extension degree of the coefficient field");
  enumerate->add_option("--max-exp", max_e, "Largest Frobenius index")->required();
  enumerate->add_option("--max-weight", max_w, "Largest absolute weight")->required();
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
  selftest->add_flag("--deep", deep, "Add q = 7 SL(2) checks and degree-2 conjugator searches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*verify) return cmd_verify(file);
    if (*classify) return cmd_classify(file, as_json);
    if (*equiv) return cmd_equiv(file, file2, as_json);
    if (*fundamental) return cmd_fundamental(file, as_json);
    if (*extend) return cmd_extend(file, out);
    if (*ga) return cmd_ga_fundamental(file, as_json);
    if (*enumerate) return cmd_enumerate(p, m, max_e, max_w);
    if (*selftest) return cmd_selftest(deep);
  } catch (const Negative& n) {
    std::cout << n.message << "\n";
    return kNegative;
  } catch (const invalid_input& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInvalid;
}
