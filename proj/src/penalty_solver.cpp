#include "geokit/penalty_solver.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include "geokit/error.hpp"
#include "geokit/parallel.hpp"

namespace geokit {

namespace {

// Residual vector [u / sqrt(K); sqrt(mu) * gap(u)], so that |r|^2 = energy + mu |gap|^2.
struct PenaltyResidual : Eigen::DenseFunctor<double>
{
  PenaltyResidual(const CollocationProblem & problem, double penalty)
      : Eigen::DenseFunctor<double>(problem.control_dim * problem.segments,
                                    problem.control_dim * problem.segments + problem.constraint_dim),
        problem_(&problem), sqrt_penalty_(std::sqrt(penalty)),
        inv_sqrt_k_(1.0 / std::sqrt(static_cast<double>(problem.segments))),
        gap_(problem.constraint_dim)
  {}

  int operator()(const InputType & u, ValueType & r) const
  {
    const Eigen::Index nu = u.size();
    r.head(nu)            = u * inv_sqrt_k_;
    problem_->endpoint_gap(u, gap_);
    r.tail(problem_->constraint_dim) = sqrt_penalty_ * gap_;
    return 0;
  }

  const CollocationProblem * problem_;
  double sqrt_penalty_;
  double inv_sqrt_k_;
  mutable Eigen::VectorXd gap_;
};

double gap_norm(const CollocationProblem & problem, const Eigen::VectorXd & u)
{
  Eigen::VectorXd gap(problem.constraint_dim);
  problem.endpoint_gap(u, gap);
  return gap.norm();
}

// Minimum-norm Gauss-Newton on the endpoint constraint alone.
void restore_feasibility(const CollocationProblem & problem, Eigen::VectorXd & u)
{
  const Eigen::Index nu = u.size();
  const int m           = problem.constraint_dim;
  Eigen::VectorXd gap(m), plus(m), minus(m);
  Eigen::MatrixXd jac(m, nu);

  problem.endpoint_gap(u, gap);
  double best = gap.norm();
  for (int iter = 0; iter < 20 && best > 1e-15 * problem.target_scale; ++iter) {
    for (Eigen::Index i = 0; i < nu; ++i) {
      const double step = 1e-6 * (problem.control_scale + std::abs(u[i]));
      const double keep = u[i];
      u[i]              = keep + step;
      problem.endpoint_gap(u, plus);
      u[i] = keep - step;
      problem.endpoint_gap(u, minus);
      u[i]       = keep;
      jac.col(i) = (plus - minus) / (2 * step);
    }
    const Eigen::MatrixXd gram = jac * jac.transpose();
    const Eigen::VectorXd lambda = gram.ldlt().solve(gap);
    const Eigen::VectorXd trial  = u - jac.transpose() * lambda;
    problem.endpoint_gap(trial, gap);
    const double now = gap.norm();
    if (!(now < best)) { break; }
    u    = trial;
    best = now;
  }
}

CollocationResult solve_one(const CollocationProblem & problem, const CollocationOptions & options,
                            int restart)
{
  const int nu = problem.control_dim * problem.segments;
  std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(restart) + 1);
  std::normal_distribution<double> normal(0.0, problem.control_scale);

  Eigen::VectorXd u(nu);
  for (int i = 0; i < nu; ++i) { u[i] = normal(rng); }

  const double tol = options.residual_tol * problem.target_scale;
  double penalty   = options.initial_penalty;
  for (int stage = 0; stage < options.max_stages; ++stage) {
    PenaltyResidual residual(problem, penalty);
    Eigen::NumericalDiff<PenaltyResidual, Eigen::Central> numeric(residual);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<PenaltyResidual, Eigen::Central>> lm(numeric);
    lm.setMaxfev(options.max_evaluations);
    lm.setFtol(1e-14);
    lm.setXtol(1e-14);
    lm.minimize(u);

    if (gap_norm(problem, u) <= 1e-2 * tol) { break; }
    penalty *= options.penalty_growth;
  }
  restore_feasibility(problem, u);

  CollocationResult out;
  out.controls     = u;
  out.length       = control_length(u, problem.control_dim);
  out.energy       = u.squaredNorm() / problem.segments;
  out.residual     = gap_norm(problem, u);
  out.best_restart = restart;
  return out;
}

}  // namespace

double control_length(const Eigen::VectorXd & controls, int control_dim)
{
  const Eigen::Index segments = controls.size() / control_dim;
  double sum                  = 0;
  for (Eigen::Index k = 0; k < segments; ++k) { sum += controls.segment(k * control_dim, control_dim).norm(); }
  return sum / static_cast<double>(segments);
}

CollocationResult solve_collocation(const CollocationProblem & problem, const CollocationOptions & options)
{
  if (problem.control_dim < 1 || problem.segments < 1 || problem.constraint_dim < 1 || !problem.endpoint_gap) {
    throw DomainError("solve_collocation: malformed problem");
  }
  if (options.restarts < 1) { throw DomainError("solve_collocation: restarts must be positive"); }

  std::vector<CollocationResult> runs(static_cast<std::size_t>(options.restarts));
  parallel_for(runs.size(), [&](std::size_t i) { runs[i] = solve_one(problem, options, static_cast<int>(i)); });

  const double tol = options.residual_tol * problem.target_scale;
  const CollocationResult * best = nullptr;
  for (const auto & run : runs) {
    if (run.residual > tol) { continue; }
    if (!best || run.length < best->length) { best = &run; }
  }
  if (!best) {
    for (const auto & run : runs) {
      if (!best || run.residual < best->residual) { best = &run; }
    }
  }
  return *best;
}

}  // namespace geokit
