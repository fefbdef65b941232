#include <gtest/gtest.h>

#include <complex>
#include <fstream>
#include <sstream>

#include "bp/cli_report.hpp"

using namespace bp;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(BP_FIXTURE_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string schema_message(const std::string& text) {
  try {
    (void)parse_job(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    return e.what();
  }
  ADD_FAILURE() << "no schema error";
  return "";
}

const char* kMinimal = R"({
  "p": 3,
  "base_field": {"poly": ["0", "1"]},
  "alpha": ["2"],
  "tasks": ["diagnose"]
})";

}  // namespace

TEST(Job, ParsesFixture) {
  const JobFile j = parse_job(fixture("unit_times_root_of_unity.job"));
  EXPECT_EQ(j.p, 3);
  EXPECT_EQ(j.precision, 60);
  ASSERT_TRUE(j.construct_d);
  EXPECT_EQ(*j.construct_d, -23);
  EXPECT_EQ(j.alpha, (Coeffs{"-5269/178", "-1034/89", "-111/89", "-59/178"}));
}

TEST(Job, SchemaErrors) {
  std::string m = schema_message(R"({
  "base_field": {"poly": ["0", "1"]},
  "alpha": ["2"],
  "tasks": ["diagnose"]
})");
  EXPECT_NE(m.find("missing required field \"p\""), std::string::npos);
  m = schema_message(R"({
  "p": 3,
  "base_field": {"poly": ["0", "1"]},
  "alpha": [0.5],
  "tasks": ["diagnose"]
})");
  EXPECT_NE(m.find("line 4: rationals must be a/b strings"), std::string::npos) << m;
  m = schema_message(R"({"p": 3, "base_field": {"poly": ["0", "1"]}, "alpha": ["1/0"], "tasks": ["diagnose"]})");
  EXPECT_NE(m.find("not a rational"), std::string::npos);
  m = schema_message(R"({"p": 3, "base_field": {"poly": ["0", "1"]}, "alpha": ["2"], "tasks": ["solve"]})");
  EXPECT_NE(m.find("unknown task"), std::string::npos);
  m = schema_message(R"({"p": 3, "base_field": {"poly": ["0", "1"]}, "alpha": ["2"], "tasks": ["log-ideal"]})");
  EXPECT_NE(m.find("need \"units\""), std::string::npos);
  m = schema_message(R"({"p": 4, "base_field": {"poly": ["0", "1"]}, "alpha": ["2"], "tasks": ["diagnose"], "x": 1})");
  EXPECT_NE(m.find("odd prime"), std::string::npos);
  EXPECT_NE(m.find("unknown key \"x\""), std::string::npos);
  m = schema_message("{\n  \"p\": 3,\n  \"alpha\": [\n");
  EXPECT_NE(m.find("malformed job"), std::string::npos);
  EXPECT_EQ(m.rfind("line ", 0), 0u);
}

TEST(Job, ConstructPolynomialVanishes) {
  // sqrt(d) + zeta_3 is a root, for both signs of sqrt(d)
  const std::complex<double> zeta(-0.5, std::sqrt(3.0) / 2);
  for (long d : {-23L, -1L, 2L, 5L, -7L, 13L}) {
    const ZPoly f = construct_poly(d);
    ASSERT_EQ(f.size(), 5u);
    for (double sign : {1.0, -1.0}) {
      const std::complex<double> x = sign * std::sqrt(std::complex<double>(double(d), 0)) + zeta;
      std::complex<double> acc = 0;
      for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i].get_d();
      EXPECT_LT(std::abs(acc), 1e-8) << d;
    }
  }
  EXPECT_EQ(construct_poly(-23), (ZPoly{507, 48, 49, 2, 1}));
}

TEST(Run, ConstructAndExplicitPolyAgree) {
  const ReportDocument a = run(parse_job(fixture("unit_times_root_of_unity.job")));
  const ReportDocument b = run(parse_job(fixture("unit_times_root_of_unity_poly.job")));
  ASSERT_TRUE(a.diagnose && b.diagnose);
  EXPECT_EQ(*a.diagnose, *b.diagnose);
  EXPECT_EQ(a.field_poly, b.field_poly);
  EXPECT_EQ(a.mu_local, b.mu_local);
}

TEST(Run, FixturesRoundTripAndAreDeterministic) {
  for (const char* name : {"unit_times_root_of_unity.job", "real_unit.job", "root_of_unity.job", "rationals_two.job",
                           "real_quadratic.job"}) {
    const JobFile job = parse_job(fixture(name));
    const ReportDocument r = run(job);
    EXPECT_TRUE(r.errors.empty()) << name;
    const std::string m = emit(r, Format::Machine);
    EXPECT_EQ(parse_report(m), r) << name;
    EXPECT_EQ(emit(run(job), Format::Machine), m) << name;
    EXPECT_EQ(exit_code(r), 0) << name;
  }
}

TEST(Run, SubtaskIsolation) {
  JobFile j = parse_job(fixture("root_of_unity.job"));
  j.tasks = {"mu-local"};
  const ReportDocument r = run(j);
  EXPECT_FALSE(r.diagnose);
  ASSERT_TRUE(r.mu_local);
  ASSERT_EQ(r.mu_local->size(), 2u);
  for (const auto& l : *r.mu_local) EXPECT_EQ(l.mu, 3);
}

TEST(Run, ExitCodes) {
  JobFile j = parse_job(fixture("unit_times_root_of_unity.job"));
  j.precision = 8;
  const ReportDocument low = run(j);
  EXPECT_EQ(exit_code(low), 3);
  EXPECT_FALSE(low.diagnose);
  const ReportDocument esc = run(j, 3);
  EXPECT_EQ(exit_code(esc), 0);
  EXPECT_GT(esc.precision, 8);

  JobFile cube = parse_job(kMinimal);
  cube.alpha = {"8"};
  EXPECT_EQ(exit_code(run(cube)), 4);
  JobFile wrong = parse_job(kMinimal);
  wrong.alpha = {"1", "2"};
  EXPECT_EQ(exit_code(run(wrong)), 2);
  EXPECT_EQ(exit_code_for(ErrorCode::SchemaError), 2);

  ReportDocument u;
  u.diagnose = DiagnoseSection{};
  u.diagnose->verdict = "UNDETERMINED";
  EXPECT_EQ(exit_code(u), 1);
}

TEST(Emit, HumanWording) {
  ReportDocument r;
  r.p = 3;
  r.diagnose = DiagnoseSection{};
  r.diagnose->verdict = "non-injective";
  r.diagnose->kernel_lo = r.diagnose->kernel_hi = 3;
  std::string h = emit(r, Format::Human);
  EXPECT_NE(h.find("non-injective"), std::string::npos);
  EXPECT_NE(h.find("kernel order 3"), std::string::npos);
  r.diagnose->verdict = "UNDETERMINED";
  r.diagnose->kernel_lo = 1;
  r.caveats = {"p-ramification undecided"};
  h = emit(r, Format::Human);
  EXPECT_NE(h.find("UNDETERMINED"), std::string::npos);
  EXPECT_NE(h.find("kernel order in {1, 3}"), std::string::npos);
  EXPECT_EQ(parse_report(emit(r, Format::Machine)), r);
}
