#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "hyperplane/acceptance.hpp"
#include "hyperplane/io.hpp"

using namespace hyperplane;

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite: one PASS/FAIL line per criterion"};
  std::vector<int> ids;
  AcceptanceOptions options;
  std::string json_path;
  bool quiet = false;
  app.add_option("criteria", ids, "Criterion numbers (default: all)")->check(CLI::Range(1, kCriterionCount));
  app.add_option("--seed", options.seed, "Seed");
  app.add_option("--threads", options.threads, "Worker threads (0 = all)");
  app.add_option("--json", json_path, "Write the test reports here");
  app.add_flag("--quick", options.quick, "Skip Monte Carlo parts");
  app.add_flag("-q,--quiet", quiet, "Summary lines only");
  CLI11_PARSE(app, argc, argv);
  if (ids.empty()) {
    for (int id = 1; id <= kCriterionCount; ++id) ids.push_back(id);
  }

  bool all_pass = true;
  std::vector<TestReport> reports;
  for (int id : ids) {
    const auto t0 = std::chrono::steady_clock::now();
    const CriterionResult c = run_criterion(id, options);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  (%.1f s)\n", c.summary_line().c_str(), secs);
    if (!quiet) {
      for (const TestReport& r : c.reports) {
        std::printf("    %s %s%s: %s\n", r.pass ? "ok  " : "FAIL", r.name.c_str(), r.required ? "" : " (info)",
                    r.detail.c_str());
      }
    }
    std::fflush(stdout);
    all_pass = all_pass && c.pass();
    reports.insert(reports.end(), c.reports.begin(), c.reports.end());
  }
  if (!json_path.empty()) write_text_file(json_path, reports_to_json(reports));
  return all_pass ? 0 : 1;
}
