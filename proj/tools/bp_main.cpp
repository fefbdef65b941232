// bp: capitulation and Bertrandias-Payan diagnostics for cyclic degree-p Kummer layers.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bp/cli_report.hpp"

namespace fs = std::filesystem;
using namespace bp;

namespace {

constexpr int kEscalations = 3;

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int diagnose_cmd(const std::string& path, const std::string& format, std::optional<int> precision, bool escalate) {
  const auto text = slurp(path);
  if (!text) {
    std::cerr << "cannot read " << path << "\n";
    return 2;
  }
  JobFile job;
  try {
    job = parse_job(*text);
  } catch (const Error& e) {
    std::cerr << path << ": schema errors\n" << e.what() << "\n";
    return exit_code_for(e.code());
  }
  if (precision) job.precision = *precision;
  const ReportDocument r = run(job, escalate ? kEscalations : 0);
  std::cout << emit(r, format == "machine" ? Format::Machine : Format::Human);
  return exit_code(r);
}

int selftest_cmd(const std::string& dir) {
  std::vector<fs::path> jobs;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".job") jobs.push_back(e.path());
  std::sort(jobs.begin(), jobs.end());
  if (jobs.empty()) {
    std::cerr << "no .job files in " << dir << "\n";
    return 2;
  }
  int bad = 0;
  for (const auto& path : jobs) {
    const auto text = slurp(path.string());
    std::string status = "ok";
    std::string verdict = "-";
    try {
      const JobFile job = parse_job(*text);
      const ReportDocument a = run(job), b = run(job);
      const std::string ma = emit(a, Format::Machine);
      if (ma != emit(b, Format::Machine)) status = "nondeterministic";
      else if (!(parse_report(ma) == a)) status = "roundtrip mismatch";
      else if (!a.errors.empty()) status = "error " + a.errors.front().code;
      if (a.diagnose) verdict = a.diagnose->verdict;
    } catch (const Error& e) {
      status = std::string("schema: ") + e.what();
    }
    if (status != "ok") ++bad;
    std::cout << (status == "ok" ? "ok    " : "FAIL  ") << path.filename().string() << "  verdict " << verdict;
    if (status != "ok") std::cout << "  (" << status << ")";
    std::cout << "\n";
  }
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capitulation and Bertrandias-Payan diagnostics"};
  app.require_subcommand(1);

  auto* diag = app.add_subcommand("diagnose", "run the tasks of a job file");
  std::string job_path, format = "human";
  std::optional<int> precision;
  bool escalate = false;
  diag->add_option("job", job_path, "job file")->required();
  diag->add_option("--format", format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
  diag->add_option("--precision", precision, "working precision N (overrides the job)")->check(CLI::Range(1, 2000));
  diag->add_flag("--escalate", escalate, "on a precision error retry at N + 20, up to 3 times");

  auto* self = app.add_subcommand("selftest", "run every fixture job: determinism and report round trip");
  std::string fixtures = BP_FIXTURE_DIR;
  self->add_option("--fixtures", fixtures, "fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (*diag) return diagnose_cmd(job_path, format, precision, escalate);
  return selftest_cmd(fixtures);
}
