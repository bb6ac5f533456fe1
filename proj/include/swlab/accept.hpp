#pragma once

#include <string>
#include <vector>

namespace swlab::accept {

// One measured pass/fail inequality inside a criterion.
struct CheckLine {
  std::string name;
  long long N = 0;  // horizon / largest n involved (0 when not applicable)
  long long M = 0;  // grid size or sample count (0 when not applicable)
  double statistic = 0.0;
  double threshold = 0.0;
  std::string relation = "<";  // statistic <relation> threshold
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::vector<CheckLine> lines;
  std::string error;  // nonempty when the run aborted on an exception
};

int criterion_count();
std::string criterion_name(int id);

// Runs one criterion (1-based id). Deterministic: every random draw derives
// from fixed stream ids, so reruns and thread counts cannot change results.
// Exceptions are captured into .error with pass = false.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_all();

// Appends rows test,N,M,statistic,threshold,pass; one row per check line
// plus a summary row per criterion (statistic = wall seconds).
void write_report_csv(const std::string& path,
                      const std::vector<CriterionResult>& results);

}  // namespace swlab::accept
