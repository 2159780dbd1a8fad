#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dclp/model.hpp"
#include "dclp/strategy.hpp"

namespace dclp {

// Current point. x and z have length n; v and w live on upper_set and
// have length |upper_set|. All four stay strictly positive.
struct Iterate {
  Vec x, v, y, z, w;
};

// Right-hand side blocks of the Newton system at an iterate:
//   rb  = b - A x
//   rc  = c - A'y - z + w
//   ru  = u - x - v            (on upper_set)
//   rxz = mu_target e - X Z e
//   rwv = mu_target e - V W e  (on upper_set)
struct Residuals {
  Vec rb, rc, ru, rxz, rwv;
};

struct Direction {
  Vec dx, dv, dy, dz, dw;
};

enum class Termination { kOptimal, kInfeasible, kUnknown, kIterLimit };
std::string to_string(Termination t);

struct SolveStats {
  int ipm_iterations = 0;
  std::vector<int> cg_iters_predictor;
  std::vector<int> cg_iters_corrector;
  std::vector<double> max_w_entry;       // per-iteration max |W_ij|
  std::vector<double> max_normal_entry;  // per-iteration max |(A Lambda A')_ij|
  std::vector<int> shift_cols;           // per-iteration count of pivot shifts
  std::vector<double> mu_history;
  double wall_time = 0.0;
  Termination termination = Termination::kUnknown;
  double objective = std::numeric_limits<double>::quiet_NaN();
  double mu = std::numeric_limits<double>::quiet_NaN();
  double primal_infeasibility = std::numeric_limits<double>::quiet_NaN();
  double dual_infeasibility = std::numeric_limits<double>::quiet_NaN();
  long total_cg() const;
  double mean_cg_predictor() const;
  double mean_cg_corrector() const;
};

struct IterationRecord {
  int iteration = 0;
  double mu = 0, primal_inf = 0, dual_inf = 0;
  int cg_predictor = 0, cg_corrector = 0;
  double max_w_entry = 0;
};

// Test instrumentation: fired after each direction recovery with views
// into the solver state (valid only during the call).
struct DirectionRecord {
  int iteration = 0;
  bool corrector = false;
  const Vec* lambda = nullptr;
  const Vec* q = nullptr;
  const Vec* dy = nullptr;
  const Iterate* iterate = nullptr;
  const Residuals* residuals = nullptr;
  const Direction* direction = nullptr;
};

struct SolveOptions {
  double eps_feas = 1e-8;
  double eps_opt = 1e-8;
  double tau = 0.9995;  // step-length damping
  int max_iter = 200;
  int stall = 5;  // consecutive mu increases before giving up
  double time_limit_sec = 600.0;
  std::optional<Iterate> initial;
  std::function<void(const IterationRecord&)> progress;
  std::function<void(const DirectionRecord&)> direction_observer;
};

// Mehrotra-style starting point from least-squares projections, shifted
// into the interior. The standalone overload factors the unscaled
// normal matrix directly; the other reuses a strategy solver.
Iterate initial_point(const StandardLp& lp);
Iterate initial_point(const StandardLp& lp, NormalSolver& solver);

Residuals residuals(const StandardLp& lp, const Iterate& it, double mu_target);

// (  <x,z> + <w,v>  ) / 2n
double duality_gap(const Iterate& it);

// Diagonal of Lambda = (X^{-1} Z + V^{-1} W)^{-1}; the bound terms enter
// only on upper_set.
Vec scaling_diag(const StandardLp& lp, const Iterate& it);

// Normal-equations right-hand side q = rb + A Lambda rc_bar with
// rc_bar = rc - X^{-1} rxz + V^{-1} rwv - V^{-1} W ru.
Vec normal_rhs(const StandardLp& lp, const Iterate& it, const Vec& lambda,
               const Residuals& r);

// Back-substitution of dy through the eliminated blocks; the result
// satisfies all five Newton equations to solver accuracy.
Direction recover_direction(const StandardLp& lp, const Iterate& it,
                            const Residuals& r, const Vec& dy);

// Damped ratio test: largest (alpha_p, alpha_d) <= 1 keeping
// (x, v) and (z, w) strictly positive with margin tau.
std::pair<double, double> step_lengths(const Iterate& it, const Direction& d,
                                       double tau);

// Centering weight sigma = (gap at the trial predictor point / current
// gap)^3, clamped to [1e-8, 1].
double centering_sigma(const Iterate& it, const Direction& predictor,
                       double alpha_p, double alpha_d);

// Corrector right-hand side: feasibility blocks zero, complementarity
// blocks sigma*mu*e minus the predictor cross products.
Residuals corrector_rhs(const Iterate& it, const Direction& predictor,
                        double sigma, double mu);

std::pair<Iterate, SolveStats> solve(const StandardLp& lp,
                                     const DirectionStrategy& strategy,
                                     const SolveOptions& opts = {});

}  // namespace dclp
