#pragma once

#include <string>
#include <vector>

namespace brep::selftest {

struct Options {
  bool deep = false;  // adds q = 7 exhaustive SL(2) checks and ext = 2 conjugator searches
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

constexpr int kCriteria = 9;

CriterionResult run_criterion(int id, const Options& opt);
std::vector<CriterionResult> run_all(const Options& opt);

// "PASS  C1 canonical-form soundness: <detail> [1.2 s]"
std::string format_line(const CriterionResult& r);

}  // namespace brep::selftest
