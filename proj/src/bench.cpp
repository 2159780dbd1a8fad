#include "dclp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <sstream>

#include "dclp/errors.hpp"

namespace dclp {

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string strategy_name(StrategyKind k) {
  switch (k) {
    case StrategyKind::kProposed: return "proposed";
    case StrategyKind::kFullCholesky: return "full";
    case StrategyKind::kSmw: return "smw";
  }
  return "?";
}

StrategyKind strategy_from_name(const std::string& name) {
  if (name == "proposed") return StrategyKind::kProposed;
  if (name == "full") return StrategyKind::kFullCholesky;
  if (name == "smw") return StrategyKind::kSmw;
  throw DomainError("unknown strategy '" + name + "'");
}

std::string RunRecord::csv_header() {
  return "schema,problem,strategy,m,n,nnz,ndense,ipm_iterations,wall_time,"
         "total_cg,mean_cg_predictor,mean_cg_corrector,termination,objective";
}

std::string RunRecord::to_csv() const {
  std::ostringstream s;
  s << kRunSchema << ',' << problem << ',' << strategy << ',' << m << ','
    << n << ',' << nnz << ',' << ndense << ',' << ipm_iterations << ','
    << num17(wall_time) << ',' << total_cg << ','
    << num17(mean_cg_predictor) << ',' << num17(mean_cg_corrector) << ','
    << termination << ',' << num17(objective);
  return s.str();
}

RunRecord RunRecord::from_csv(const std::string& line, int line_no) {
  std::vector<std::string> f = split_csv(line);
  if (f.size() != 14)
    throw ParseError("run CSV row has " + std::to_string(f.size()) +
                         " fields, expected 14",
                     line_no);
  if (f[0] != kRunSchema)
    throw ParseError("unknown CSV schema '" + f[0] + "'", line_no);
  RunRecord r;
  try {
    r.problem = f[1];
    r.strategy = f[2];
    r.m = std::stoi(f[3]);
    r.n = std::stoi(f[4]);
    r.nnz = std::stoi(f[5]);
    r.ndense = std::stoi(f[6]);
    r.ipm_iterations = std::stoi(f[7]);
    r.wall_time = std::stod(f[8]);
    r.total_cg = std::stol(f[9]);
    r.mean_cg_predictor = std::stod(f[10]);
    r.mean_cg_corrector = std::stod(f[11]);
    r.termination = f[12];
    r.objective = std::stod(f[13]);
  } catch (const std::exception&) {
    throw ParseError("malformed run CSV row", line_no);
  }
  return r;
}

RunRecord run_problem(const std::string& name, const StandardLp& lp,
                      const DirectionStrategy& strategy,
                      const SolveOptions& opts) {
  RunRecord rec;
  rec.problem = name;
  rec.strategy = strategy_name(strategy.variant);
  rec.m = lp.m();
  rec.n = lp.n();
  rec.nnz = lp.a.nnz();
  try {
    ColumnPartition part = detect_dense(lp.a, strategy.policy);
    rec.ndense = strategy.variant == StrategyKind::kFullCholesky
                     ? 0
                     : part.n_dense();
    auto [it, stats] = solve(lp, strategy, opts);
    rec.ipm_iterations = stats.ipm_iterations;
    rec.wall_time = stats.wall_time;
    rec.total_cg = stats.total_cg();
    rec.mean_cg_predictor = stats.mean_cg_predictor();
    rec.mean_cg_corrector = stats.mean_cg_corrector();
    rec.termination = to_string(stats.termination);
    rec.objective = stats.objective;
  } catch (const std::exception&) {
    rec.termination = to_string(Termination::kUnknown);
    rec.objective = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

std::vector<RunRecord> compare_runs(
    const std::vector<std::pair<std::string, StandardLp>>& problems,
    const std::vector<DirectionStrategy>& strategies,
    const SolveOptions& opts) {
  std::vector<RunRecord> rows;
  rows.reserve(problems.size() * strategies.size());
  for (const auto& [name, lp] : problems)
    for (const DirectionStrategy& s : strategies)
      rows.push_back(run_problem(name, lp, s, opts));
  return rows;
}

std::string to_csv(const std::vector<RunRecord>& rows) {
  std::string out = RunRecord::csv_header() + "\n";
  for (const RunRecord& r : rows) out += r.to_csv() + "\n";
  return out;
}

std::vector<RunRecord> parse_run_csv(std::istream& in) {
  std::vector<RunRecord> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != RunRecord::csv_header())
        throw ParseError("unexpected CSV header", line_no);
      continue;
    }
    rows.push_back(RunRecord::from_csv(line, line_no));
  }
  return rows;
}

std::vector<ProfilePoint> performance_profile(
    const std::vector<RunRecord>& rows) {
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // best finite time per problem
  std::map<std::string, double> best;
  std::vector<std::string> strategies;
  for (const RunRecord& r : rows) {
    if (std::find(strategies.begin(), strategies.end(), r.strategy) ==
        strategies.end())
      strategies.push_back(r.strategy);
    double t = r.termination == "Optimal" ? r.wall_time : kInf;
    auto [it, fresh] = best.insert({r.problem, t});
    if (!fresh) it->second = std::min(it->second, t);
  }
  const double n_problems = static_cast<double>(best.size());

  std::vector<ProfilePoint> points;
  for (const std::string& s : strategies) {
    std::vector<double> ratios;
    for (const RunRecord& r : rows) {
      if (r.strategy != s) continue;
      double t = r.termination == "Optimal" ? r.wall_time : kInf;
      double b = best.at(r.problem);
      if (!std::isfinite(t) || !std::isfinite(b)) continue;
      ratios.push_back(b > 0.0 ? t / b : 1.0);
    }
    std::sort(ratios.begin(), ratios.end());
    size_t i = 0;
    while (i < ratios.size()) {
      size_t j = i;
      while (j < ratios.size() && ratios[j] == ratios[i]) ++j;
      points.push_back(
          {s, std::log2(ratios[i]), static_cast<double>(j) / n_problems});
      i = j;
    }
  }
  return points;
}

std::string to_csv(const std::vector<ProfilePoint>& points) {
  std::string out = std::string("schema,strategy,log2_ratio,fraction\n");
  for (const ProfilePoint& p : points) {
    out += kProfileSchema;
    out += ',' + p.strategy + ',' + num17(p.log2_ratio) + ',' +
           num17(p.fraction) + '\n';
  }
  return out;
}

}  // namespace dclp
