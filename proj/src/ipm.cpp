#include "dclp/ipm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "dclp/errors.hpp"

namespace dclp {

namespace {

double inf_norm(const Vec& v) {
  return v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0;
}

// rc_bar = rc - X^{-1} rxz + V^{-1} rwv - V^{-1} W ru   (bound terms on
// upper_set only); this is the dual block after eliminating dz, dv, dw.
Vec reduced_dual_rhs(const StandardLp& lp, const Iterate& it,
                     const Residuals& r) {
  Vec rc_bar = r.rc - (r.rxz.array() / it.x.array()).matrix();
  for (int t = 0; t < lp.n_upper(); ++t) {
    int j = lp.upper_set[t];
    rc_bar[j] += (r.rwv[t] - it.w[t] * r.ru[t]) / it.v[t];
  }
  return rc_bar;
}

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kOptimal: return "Optimal";
    case Termination::kInfeasible: return "Infeasible";
    case Termination::kUnknown: return "Unknown";
    case Termination::kIterLimit: return "IterLimit";
  }
  return "Unknown";
}

long SolveStats::total_cg() const {
  long t = 0;
  for (int c : cg_iters_predictor) t += c;
  for (int c : cg_iters_corrector) t += c;
  return t;
}

double SolveStats::mean_cg_predictor() const {
  if (cg_iters_predictor.empty()) return 0.0;
  long t = 0;
  for (int c : cg_iters_predictor) t += c;
  return static_cast<double>(t) / cg_iters_predictor.size();
}

double SolveStats::mean_cg_corrector() const {
  if (cg_iters_corrector.empty()) return 0.0;
  long t = 0;
  for (int c : cg_iters_corrector) t += c;
  return static_cast<double>(t) / cg_iters_corrector.size();
}

Iterate initial_point(const StandardLp& lp, NormalSolver& solver) {
  const int n = lp.n(), l = lp.n_upper();
  Iterate it;
  try {
    solver.refresh(Vec::Ones(n));
    if (solver.config().variant == StrategyKind::kFullCholesky &&
        solver.shift_count() > 0)
      throw ModelError(
          "initial_point: constraint matrix is row-rank deficient");
    // least-squares x = A'(AA')^{-1} b and y = (AA')^{-1} A c
    it.x = spmv(lp.a, solver.solve_dy(lp.b).dy, /*transpose=*/true);
    it.y = solver.solve_dy(spmv(lp.a, lp.c)).dy;
  } catch (const StrategyError& e) {
    throw ModelError(
        std::string("initial_point: normal matrix solve failed (") +
        e.what() + ")");
  }
  it.z = lp.c - spmv(lp.a, it.y, /*transpose=*/true);

  auto shift_positive = [](Vec& v) {
    if (v.size() == 0) return;
    double floor = std::max(1.0, 0.01 * inf_norm(v));
    double shift = std::max(0.0, floor - v.minCoeff());
    v.array() += shift;
  };
  shift_positive(it.x);
  shift_positive(it.z);

  it.v = Vec(l);
  it.w = Vec(l);
  const double w0 = std::max(1.0, 0.01 * inf_norm(it.z));
  for (int t = 0; t < l; ++t) {
    int j = lp.upper_set[t];
    it.v[t] = std::max(lp.upper[j] - it.x[j], 1.0);
    it.w[t] = w0;
  }
  return it;
}

Iterate initial_point(const StandardLp& lp) {
  DirectionStrategy full;
  full.variant = StrategyKind::kFullCholesky;
  NormalSolver solver(lp.a, full);
  return initial_point(lp, solver);
}

Residuals residuals(const StandardLp& lp, const Iterate& it,
                    double mu_target) {
  Residuals r;
  r.rb = lp.b - spmv(lp.a, it.x);
  r.rc = lp.c - spmv(lp.a, it.y, /*transpose=*/true) - it.z;
  r.rxz = (mu_target - it.x.array() * it.z.array()).matrix();
  const int l = lp.n_upper();
  r.ru = Vec(l);
  for (int t = 0; t < l; ++t) {
    int j = lp.upper_set[t];
    r.rc[j] += it.w[t];
    r.ru[t] = lp.upper[j] - it.x[j] - it.v[t];
  }
  r.rwv = (mu_target - it.v.array() * it.w.array()).matrix();
  return r;
}

double duality_gap(const Iterate& it) {
  double gap = it.x.dot(it.z) + it.w.dot(it.v);
  return gap / (2.0 * it.x.size());
}

Vec scaling_diag(const StandardLp& lp, const Iterate& it) {
  Vec ratio = (it.z.array() / it.x.array()).matrix();
  for (int t = 0; t < lp.n_upper(); ++t)
    ratio[lp.upper_set[t]] += it.w[t] / it.v[t];
  return ratio.cwiseInverse();
}

Vec normal_rhs(const StandardLp& lp, const Iterate& it, const Vec& lambda,
               const Residuals& r) {
  Vec scaled = (lambda.array() * reduced_dual_rhs(lp, it, r).array()).matrix();
  Vec q = r.rb;
  spmv_accum(lp.a, scaled, 1.0, q);
  return q;
}

Direction recover_direction(const StandardLp& lp, const Iterate& it,
                            const Residuals& r, const Vec& dy) {
  Direction d;
  d.dy = dy;
  Vec lambda = scaling_diag(lp, it);
  Vec rhs = spmv(lp.a, dy, /*transpose=*/true) - reduced_dual_rhs(lp, it, r);
  d.dx = (lambda.array() * rhs.array()).matrix();
  d.dz = ((r.rxz.array() - it.z.array() * d.dx.array()) / it.x.array())
             .matrix();
  const int l = lp.n_upper();
  d.dv = Vec(l);
  d.dw = Vec(l);
  for (int t = 0; t < l; ++t) {
    int j = lp.upper_set[t];
    d.dv[t] = r.ru[t] - d.dx[j];
    d.dw[t] = (r.rwv[t] - it.w[t] * d.dv[t]) / it.v[t];
  }
  return d;
}

std::pair<double, double> step_lengths(const Iterate& it, const Direction& d,
                                       double tau) {
  if (!(tau > 0.0 && tau <= 1.0))
    throw DomainError("step_lengths: tau must be in (0, 1]");
  auto ratio = [tau](const Vec& v, const Vec& dv) {
    double a = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (dv[i] < 0.0) a = std::min(a, -tau * v[i] / dv[i]);
    return a;
  };
  double ap = std::min(ratio(it.x, d.dx), ratio(it.v, d.dv));
  double ad = std::min(ratio(it.z, d.dz), ratio(it.w, d.dw));
  return {ap, ad};
}

double centering_sigma(const Iterate& it, const Direction& predictor,
                       double alpha_p, double alpha_d) {
  double gap = it.x.dot(it.z) + it.w.dot(it.v);
  double trial =
      (it.x + alpha_p * predictor.dx).dot(it.z + alpha_d * predictor.dz) +
      (it.w + alpha_d * predictor.dw).dot(it.v + alpha_p * predictor.dv);
  double sigma = std::pow(trial / gap, 3);
  return std::clamp(sigma, 1e-8, 1.0);
}

Residuals corrector_rhs(const Iterate& it, const Direction& predictor,
                        double sigma, double mu) {
  Residuals r;
  r.rb = Vec::Zero(it.y.size());
  r.rc = Vec::Zero(it.x.size());
  r.ru = Vec::Zero(it.v.size());
  r.rxz =
      (sigma * mu - predictor.dx.array() * predictor.dz.array()).matrix();
  r.rwv =
      (sigma * mu - predictor.dv.array() * predictor.dw.array()).matrix();
  return r;
}

std::pair<Iterate, SolveStats> solve(const StandardLp& lp,
                                     const DirectionStrategy& strategy,
                                     const SolveOptions& opts) {
  using Clock = std::chrono::steady_clock;
  const auto t_start = Clock::now();
  auto elapsed = [&t_start]() {
    return std::chrono::duration<double>(Clock::now() - t_start).count();
  };

  SolveStats stats;
  NormalSolver solver(lp.a, strategy);
  Iterate it = opts.initial ? *opts.initial : initial_point(lp, solver);

  double u_norm = 0.0;
  for (int j : lp.upper_set) u_norm = std::max(u_norm, std::abs(lp.upper[j]));

  const double mu0 = duality_gap(it);
  int stall_count = 0;
  double mu_prev = mu0;

  while (true) {
    Residuals res = residuals(lp, it, /*mu_target=*/0.0);
    double mu = duality_gap(it);
    double obj = lp.objective(it.x);
    double primal_inf = std::max(inf_norm(res.rb) / (1.0 + inf_norm(lp.b)),
                                 inf_norm(res.ru) / (1.0 + u_norm));
    double dual_inf = inf_norm(res.rc) / (1.0 + inf_norm(lp.c));
    stats.objective = obj;
    stats.mu = mu;
    stats.primal_infeasibility = primal_inf;
    stats.dual_infeasibility = dual_inf;

    double rel_gap = mu / (1.0 + std::abs(obj));
    if (primal_inf <= opts.eps_feas && dual_inf <= opts.eps_feas &&
        rel_gap <= opts.eps_opt && mu <= opts.eps_opt * mu0) {
      stats.termination = Termination::kOptimal;
      break;
    }
    if (stats.ipm_iterations >= opts.max_iter ||
        elapsed() > opts.time_limit_sec) {
      stats.termination = Termination::kIterLimit;
      break;
    }
    if (!std::isfinite(mu) || mu > 1e12 * (1.0 + mu0)) {
      stats.termination = Termination::kInfeasible;
      break;
    }
    if (mu > mu_prev && ++stall_count >= opts.stall) {
      // no certificate is computed; residual blow-up while mu stalls is
      // labelled infeasible, anything else unknown
      stats.termination = (primal_inf + dual_inf > 1e3)
                              ? Termination::kInfeasible
                              : Termination::kUnknown;
      break;
    }
    if (mu <= mu_prev) stall_count = 0;
    mu_prev = mu;

    Vec lambda = scaling_diag(lp, it);
    int cg_pred = 0, cg_corr = 0;
    Direction dir;
    try {
      solver.refresh(lambda);

      // predictor (affine) direction
      Vec q_pred = normal_rhs(lp, it, lambda, res);
      DirectionSolve pred = solver.solve_dy(q_pred);
      cg_pred = pred.cg_iters;
      Direction dp = recover_direction(lp, it, res, pred.dy);
      if (opts.direction_observer)
        opts.direction_observer({stats.ipm_iterations, false, &lambda,
                                 &q_pred, &pred.dy, &it, &res, &dp});

      auto [ap, ad] = step_lengths(it, dp, opts.tau);
      double sigma = centering_sigma(it, dp, ap, ad);

      // corrector reuses this iteration's factorization
      Residuals rc = corrector_rhs(it, dp, sigma, mu);
      Vec q_corr = normal_rhs(lp, it, lambda, rc);
      DirectionSolve corr = solver.solve_dy(q_corr);
      cg_corr = corr.cg_iters;
      Direction dc = recover_direction(lp, it, rc, corr.dy);
      if (opts.direction_observer)
        opts.direction_observer({stats.ipm_iterations, true, &lambda, &q_corr,
                                 &corr.dy, &it, &rc, &dc});

      dir.dx = dp.dx + dc.dx;
      dir.dv = dp.dv + dc.dv;
      dir.dy = dp.dy + dc.dy;
      dir.dz = dp.dz + dc.dz;
      dir.dw = dp.dw + dc.dw;
    } catch (const StrategyError&) {
      stats.termination = Termination::kUnknown;
      break;
    } catch (const IndefiniteError&) {
      stats.termination = Termination::kUnknown;
      break;
    }

    auto [ap, ad] = step_lengths(it, dir, opts.tau);
    it.x += ap * dir.dx;
    it.v += ap * dir.dv;
    it.y += ad * dir.dy;
    it.z += ad * dir.dz;
    it.w += ad * dir.dw;

    stats.ipm_iterations++;
    stats.cg_iters_predictor.push_back(cg_pred);
    stats.cg_iters_corrector.push_back(cg_corr);
    stats.max_w_entry.push_back(solver.max_w_entry());
    stats.max_normal_entry.push_back(solver.max_normal_diag());
    stats.shift_cols.push_back(solver.shift_count());
    stats.mu_history.push_back(duality_gap(it));

    if (opts.progress) {
      IterationRecord rec;
      rec.iteration = stats.ipm_iterations;
      rec.mu = stats.mu_history.back();
      rec.primal_inf = primal_inf;
      rec.dual_inf = dual_inf;
      rec.cg_predictor = cg_pred;
      rec.cg_corrector = cg_corr;
      rec.max_w_entry = stats.max_w_entry.back();
      opts.progress(rec);
    }
  }

  stats.wall_time = elapsed();
  return {std::move(it), stats};
}

}  // namespace dclp
