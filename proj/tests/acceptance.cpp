// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: brep_acceptance [--deep] [ID...]; exits 0 iff every selected
// criterion passes.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "selftest.hpp"

int main(int argc, char** argv) {
  brep::selftest::Options opt;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--deep") {
      opt.deep = true;
      continue;
    }
    if (!a.empty() && (a[0] == 'C' || a[0] == 'c')) a = a.substr(1);
    int id = std::atoi(a.c_str());
    if (id < 1 || id > brep::selftest::kCriteria) {
      std::cerr << "unknown criterion '" << argv[i] << "'\n";
      return 2;
    }
    ids.push_back(id);
  }
  if (ids.empty()) {
    for (int id = 1; id <= brep::selftest::kCriteria; ++id) ids.push_back(id);
  }
  bool all = true;
  for (int id : ids) {
    brep::selftest::CriterionResult r = brep::selftest::run_criterion(id, opt);
    std::cout << brep::selftest::format_line(r) << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
