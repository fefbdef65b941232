#ifndef BP_CLI_REPORT_HPP
#define BP_CLI_REPORT_HPP
// Job files, orchestration and report emission for the bp command line tool.
#include <optional>
#include <string>
#include <vector>

#include "bp/bp_lattice.hpp"

namespace bp {

using Coeffs = std::vector<std::string>;  // exact rationals "a" or "a/b", power basis

struct JobIdeal {
  std::vector<int> class_exponents;
  std::optional<Coeffs> principal;
  bool operator==(const JobIdeal&) const = default;
};
struct JobClass {
  long q = 0;
  Coeffs poly;  // the ideal is (q, poly(theta))
  int order = 1;
  Coeffs generator;
  bool operator==(const JobClass&) const = default;
};
struct JobTame {
  int e = 1;
  JobIdeal ideal;
  bool operator==(const JobTame&) const = default;
};

struct JobFile {
  long p = 0;
  int precision = 60;
  std::optional<Coeffs> poly;
  std::optional<long> construct_d;
  Coeffs alpha;
  std::optional<std::vector<JobClass>> class_group;
  std::optional<std::vector<Coeffs>> units;
  std::optional<long> bp_K_order;
  std::vector<JobTame> tame_ramified;
  std::optional<JobIdeal> ideal;
  std::vector<std::string> tasks;
};

// Raises Error(SchemaError) listing every problem as "line N: message".
JobFile parse_job(const std::string& text);
// Minimal polynomial of sqrt(d) + zeta_3, low to high.
ZPoly construct_poly(long d);

struct PlaceLine {
  long q = 0;
  int index = 0, e = 1, f = 1;
  std::string kind;
  int mu_Kv = 0, mu_Lw = 0, e_rel = 1, f_rel = 1;
  std::optional<Coeffs> witness;  // split root, completion coordinates
  int witness_shift = 0;
  std::optional<int> w_one_minus_s, xi_exponent;
  long h1 = 1;
  bool operator==(const PlaceLine&) const = default;
};
struct DiagnoseSection {
  long mu_K = 1, mu_L = 1;
  bool globally_cyclotomic = false;
  std::string ramification;
  std::vector<PlaceLine> places;
  long kernel_lo = 1, kernel_hi = 1;
  std::string verdict;
  std::string rule;
  std::optional<long> im_psi;
  bool operator==(const DiagnoseSection&) const = default;
};
struct MuLocalLine {
  long q = 0;
  int index = 0, e = 1, f = 1;
  long mu = 1;
  bool operator==(const MuLocalLine&) const = default;
};
struct FixedPointSection {
  int numerator_exponent = 0, index_exponent = 0, exponent = 0;
  std::optional<int> bp_lo, bp_hi;  // exponents of |BP_L^G|
  bool operator==(const FixedPointSection&) const = default;
};
struct LogIdealSection {
  Coeffs coords;  // quotient-frame coordinates, value = coords / p^shift
  int shift = 0, precision = 0;
  bool operator==(const LogIdealSection&) const = default;
};
struct TaskError {
  std::string task, code, message;
  bool operator==(const TaskError&) const = default;
};

struct ReportDocument {
  long p = 0;
  Coeffs field_poly;
  Coeffs alpha;
  int precision = 0;
  std::vector<int> precisions_compared;
  std::vector<std::string> tasks;
  std::optional<DiagnoseSection> diagnose;
  std::optional<std::vector<MuLocalLine>> mu_local;
  std::optional<int> bp_trivial_class_exponent;
  std::optional<FixedPointSection> fixed_point;
  std::optional<LogIdealSection> log_ideal;
  std::vector<std::string> caveats;
  std::vector<TaskError> errors;
  bool operator==(const ReportDocument&) const = default;
};

// Runs the tasks; errors become TaskError entries. With escalate > 0, a run that hits
// PrecisionExhausted is repeated at N + 20, up to escalate times.
ReportDocument run(const JobFile& job, int escalate = 0);

enum class Format { Human, Machine };
std::string emit(const ReportDocument& r, Format f);
ReportDocument parse_report(const std::string& machine);

// 0 ok, 1 undetermined verdict, 2 schema, 3 precision, 4 domain.
int exit_code(const ReportDocument& r);
int exit_code_for(ErrorCode c);

}  // namespace bp

#endif
