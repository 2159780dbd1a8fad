#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dclp/ipm.hpp"

namespace dclp {

inline constexpr const char* kRunSchema = "dclp.run.v1";
inline constexpr const char* kProfileSchema = "dclp.profile.v1";

// One (problem, strategy) result; round-trips losslessly through CSV.
struct RunRecord {
  std::string problem;
  std::string strategy;
  int m = 0, n = 0, nnz = 0, ndense = 0;
  int ipm_iterations = 0;
  double wall_time = 0.0;
  long total_cg = 0;
  double mean_cg_predictor = 0.0;
  double mean_cg_corrector = 0.0;
  std::string termination = "Unknown";
  double objective = 0.0;

  static std::string csv_header();
  std::string to_csv() const;
  static RunRecord from_csv(const std::string& line, int line_no);
};

std::string strategy_name(StrategyKind k);
StrategyKind strategy_from_name(const std::string& name);

// Solve one standardized problem and fold the stats into a RunRecord.
// Solver failures surface as termination codes, never as exceptions.
RunRecord run_problem(const std::string& name, const StandardLp& lp,
                      const DirectionStrategy& strategy,
                      const SolveOptions& opts);

// Cross product of problems and strategies, same density policy
// everywhere; rows come out in (problem, strategy) input order.
std::vector<RunRecord> compare_runs(
    const std::vector<std::pair<std::string, StandardLp>>& problems,
    const std::vector<DirectionStrategy>& strategies,
    const SolveOptions& opts);

std::string to_csv(const std::vector<RunRecord>& rows);
std::vector<RunRecord> parse_run_csv(std::istream& in);

// One step-function point of a performance profile.
struct ProfilePoint {
  std::string strategy;
  double log2_ratio = 0.0;
  double fraction = 0.0;
};

// Time ratios against the per-problem best strategy; non-Optimal runs
// get an infinite ratio and never contribute points.
std::vector<ProfilePoint> performance_profile(
    const std::vector<RunRecord>& rows);

std::string to_csv(const std::vector<ProfilePoint>& points);

}  // namespace dclp
