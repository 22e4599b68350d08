#pragma once

/**
 * @file
 * @brief Direct collocation over piecewise-constant controls with penalty continuation.
 *
 * A path is K segments of duration 1/K; segment k applies the constant control
 * u_k in R^d. The caller supplies the endpoint map and the target. The solver
 * minimizes the control energy (1/K) sum |u_k|^2 plus mu |endpoint - target|^2,
 * growing mu by a factor 10 per stage, then removes the remaining endpoint gap
 * with minimum-norm Gauss-Newton steps. The reported length (1/K) sum |u_k| is
 * the length of a feasible path up to the achieved residual.
 */

#include <cstdint>
#include <functional>

#include <Eigen/Core>

namespace geokit {

struct CollocationProblem
{
  int control_dim    = 0;  ///< d, controls per segment
  int segments       = 0;  ///< K
  int constraint_dim = 0;  ///< size of the endpoint residual
  /// Writes endpoint(controls) - target into `residual` (already sized).
  std::function<void(const Eigen::VectorXd & controls, Eigen::VectorXd & residual)> endpoint_gap;
  /// Typical magnitude of a control; random restarts draw N(0, scale^2) entries.
  double control_scale = 1.0;
  /// Length scale used to normalize the endpoint residual tolerance.
  double target_scale = 1.0;
};

struct CollocationOptions
{
  int restarts              = 8;
  std::uint64_t seed        = 0;
  double residual_tol       = 1e-6;  ///< relative to target_scale
  double initial_penalty    = 100.0;  ///< large enough that restarts do not collapse to u = 0
  double penalty_growth     = 10.0;
  int max_stages            = 14;
  int max_evaluations       = 4000;  ///< per LM stage
};

struct CollocationResult
{
  double length   = 0;  ///< (1/K) sum |u_k|
  double energy   = 0;  ///< (1/K) sum |u_k|^2
  double residual = 0;  ///< |endpoint - target| of the returned controls
  Eigen::VectorXd controls;
  int best_restart = -1;
};

/// Path length (1/K) sum_k |u_k| for a control vector of K blocks of size d.
double control_length(const Eigen::VectorXd & controls, int control_dim);

/// Best of `restarts` randomized solves; restarts run through parallel_for and are
/// seeded by (seed, restart index) so the result does not depend on thread count.
CollocationResult solve_collocation(const CollocationProblem & problem,
                                    const CollocationOptions & options);

}  // namespace geokit
