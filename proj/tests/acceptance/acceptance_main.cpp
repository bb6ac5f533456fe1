// Acceptance gate. Runs every criterion (or one, via --criterion N) and
// prints a single PASS/FAIL line per criterion plus one detail line per
// check. Exit status is 0 only if everything passed.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "swlab/accept.hpp"
#include "swlab/csv.hpp"

int main(int argc, char** argv) {
  int only = 0;
  std::string report_path;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--report") == 0 && i + 1 < argc) {
      report_path = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N] [--report out.csv]\n",
                   argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > swlab::accept::criterion_count()) {
    std::fprintf(stderr, "criterion id out of range: %d\n", only);
    return 2;
  }

  std::vector<swlab::accept::CriterionResult> results;
  if (only > 0) {
    results.push_back(swlab::accept::run_criterion(only));
  } else {
    for (int id = 1; id <= swlab::accept::criterion_count(); ++id) {
      results.push_back(swlab::accept::run_criterion(id));
    }
  }

  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::printf("[%s] criterion %d %s (%.1fs)\n", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.seconds);
    for (const auto& c : r.lines) {
      std::printf("    %-4s %s = %s %s %s\n", c.pass ? "ok" : "FAIL",
                  c.name.c_str(), swlab::format_g(c.statistic).c_str(),
                  c.relation.c_str(), swlab::format_g(c.threshold).c_str());
    }
    if (!r.error.empty()) std::printf("    error: %s\n", r.error.c_str());
    std::fflush(stdout);
  }
  if (!report_path.empty()) {
    swlab::accept::write_report_csv(report_path, results);
  }
  return all ? 0 : 1;
}
