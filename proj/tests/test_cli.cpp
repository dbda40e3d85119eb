#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stdout captured and stderr merged into it.
CliResult brep(const std::string& args) {
  std::string cmd = std::string(BREP_CLI_PATH) + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(BREP_TEST_DATA) + "/" + name; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(brep("verify " + data("case11.txt")).code, 0);
  CliResult bad = brep("verify " + data("not_hom.txt"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(contains(bad.out, "entry (1,3)"));
  CliResult malformed = brep("verify " + data("malformed.txt"));
  EXPECT_EQ(malformed.code, 2);
  EXPECT_TRUE(contains(malformed.out, "line 4, column 12"));
  EXPECT_EQ(brep("verify " + data("missing.txt")).code, 2);
  EXPECT_EQ(brep("frobnicate").code, 2);
}

TEST(Cli, ClassifyCaseOneOne) {
  CliResult r = brep("classify " + data("case11.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "form: (I)* e1=0"));
  EXPECT_TRUE(contains(r.out, "case: 1.1"));
  EXPECT_TRUE(contains(r.out, "conjugator: [1, 0, 0; 0, 2, 0; 0, 0, 1]"));
}

TEST(Cli, ClassifyJsonFields) {
  CliResult r = brep("classify --json " + data("form6_conj.txt"));
  EXPECT_EQ(r.code, 0);
  for (const char* key : {"\"verdict\":", "\"case\":", "\"form\":\"(VI)*\"", "\"payload\":", "\"conjugator\":", "\"certificate\":null"}) {
    EXPECT_TRUE(contains(r.out, key)) << key;
  }
}

TEST(Cli, Equivalence) {
  CliResult yes = brep("equiv " + data("form6.txt") + " " + data("form6_conj.txt"));
  EXPECT_EQ(yes.code, 0);
  EXPECT_TRUE(contains(yes.out, "equivalent"));
  CliResult no = brep("equiv " + data("form3.txt") + " " + data("form6.txt"));
  EXPECT_EQ(no.code, 1);
  EXPECT_TRUE(contains(no.out, "not equivalent"));
}

TEST(Cli, FundamentalFormSixPrintsCertificate) {
  CliResult r = brep("fundamental " + data("form6.txt"));
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "not fundamental"));
  EXPECT_TRUE(contains(r.out, "certificate: "));
  EXPECT_TRUE(contains(r.out, "1 = (1+s)^2"));

  CliResult j = brep("fundamental --json " + data("form6.txt"));
  EXPECT_EQ(j.code, 1);
  EXPECT_TRUE(contains(j.out, "\"verdict\":\"not fundamental\""));
  EXPECT_FALSE(contains(j.out, "\"certificate\":null"));
}

TEST(Cli, ExtendWritesVerifiableFormula) {
  std::string out = testing::TempDir() + "brep_cli_extend.txt";
  CliResult r = brep("extend " + data("form4.txt") + " -o " + out);
  ASSERT_EQ(r.code, 0) << r.out;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_TRUE(contains(ss.str(), "kind = sl2-formula"));
  EXPECT_EQ(brep("verify " + out).code, 0);
  EXPECT_EQ(brep("extend " + data("form6.txt") + " -o " + out).code, 1);
  std::remove(out.c_str());
}

TEST(Cli, GaFundamental) {
  CliResult yes = brep("ga-fundamental " + data("ga_21.txt"));
  EXPECT_EQ(yes.code, 0);
  EXPECT_TRUE(contains(yes.out, "case: (2.1)"));
  EXPECT_EQ(brep("ga-fundamental " + data("ga_negative.txt")).code, 1);
  EXPECT_EQ(brep("ga-fundamental " + data("case11.txt")).code, 2);
}

TEST(Cli, Enumerate) {
  CliResult r = brep("enumerate --p 5 --m 1 --max-exp 0 --max-weight 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "(II)*\tl1=1 l2=0 l3=-1\tnot"));
  EXPECT_TRUE(contains(r.out, "(II)*\tl1=2 l2=0 l3=-2\tnot"));
  EXPECT_TRUE(contains(r.out, "(XII)*\t\tfundamental"));
  EXPECT_EQ(brep("enumerate --p 4 --m 1 --max-exp 0 --max-weight 2").code, 2);
}
