#pragma once

/**
 * @file
 * @brief Carnot-Caratheodory distance on H^n.
 *
 * Geodesics from the origin are horizontal lifts of circular arcs
 *
 *   z(s) = w (e^{i k s} - 1) / (i k),   t(s) = -2 (k s - sin(k s)) / k^2,   |w| = 1,
 *
 * and k = 0 gives straight lines in C^n x {0}. A target (z, t) with r = |z| is
 * reached at arclength L with phase phi = k L solving
 *
 *   |t| / r^2 = (phi - sin phi) / (2 sin^2(phi / 2)),   0 <= phi < 2 pi,
 *
 * and L = r phi / (2 sin(phi / 2)). Points of the center are reached at phi = 2 pi,
 * L = sqrt(pi |t|).
 *
 * cc_oracle() is an independent check: it minimizes over piecewise-constant
 * horizontal controls and never uses the closed-form family.
 */

#include <cstdint>
#include <vector>

#include "geokit/heis.hpp"

namespace geokit {

struct CCSolverConfig
{
  int controls_per_path = 64;  ///< K for the oracle
  int restarts          = 8;
  double tol            = 1e-12;  ///< relative tolerance on length
  int max_iter          = 200;
  std::uint64_t seed    = 0;

  /// Throws DomainError unless tol > 0, K >= 2, restarts >= 1, max_iter >= 1.
  void validate() const;
};

/// Unit-speed horizontal lift of a planar circle (twist != 0) or line (twist == 0).
class GeodesicArc
{
public:
  /// `direction` holds 2n frame coefficients with unit norm (within 1e-12).
  GeodesicArc(HeisPoint start, std::vector<double> direction, double twist, double duration);

  int n() const noexcept { return start_.n(); }
  const HeisPoint & start() const noexcept { return start_; }
  const std::vector<double> & direction() const noexcept { return direction_; }
  double twist() const noexcept { return twist_; }
  double duration() const noexcept { return duration_; }

private:
  HeisPoint start_;
  std::vector<double> direction_;
  double twist_;
  double duration_;
};

/// Point at arclength s in [0, duration].
HeisPoint geodesic_point(const GeodesicArc & arc, double s);

/// Minimizing arc from p to q (one of them when q^{-1} p lies in the center).
GeodesicArc geodesic_to(const HeisPoint & p, const HeisPoint & q, const CCSolverConfig & cfg = {});

/// Distance from the origin as a function of the radial profile (|z|, t).
double cc_radial(double r, double t, const CCSolverConfig & cfg = {});

/// d_cc(p, q); throws UnconvergedError if the phase solve fails.
double cc_dist(const HeisPoint & p, const HeisPoint & q, const CCSolverConfig & cfg = {});

struct OracleResult
{
  double length   = 0;  ///< length of the best path found (upper bound on d_cc)
  double residual = 0;  ///< Euclidean endpoint miss of that path, in coordinates where p is the origin
};

/// Best piecewise-constant-control path from p to q with K segments.
OracleResult cc_oracle(const HeisPoint & p, const HeisPoint & q, int segments, int restarts,
                       std::uint64_t seed = 0);

/// Finite-difference |grad_H d_q|_H at p with frame steps +-h. Expected to be 1.
/// Throws DomainError when q^{-1} p is within 10 h of the center.
double eikonal_check(const HeisPoint & q, const HeisPoint & p, double h, const CCSolverConfig & cfg = {});

/// Axis-aligned sampling box in R^{2n+1}.
struct ScanBox
{
  std::vector<double> lo;
  std::vector<double> hi;

  int n() const;
  static ScanBox unit(int n);  ///< [0, 1]^{2n+1}
};

struct ComparabilityReport
{
  double c_low  = 0;  ///< max |p - q| / d_cc
  double c_high = 0;  ///< max d_cc / |p - q|^{1/2}
  double c_root = 0;  ///< max(c_low, c_high): one C for both sides
  double koranyi_min = 0;  ///< min d_cc / d_K
  double koranyi_max = 0;  ///< max d_cc / d_K
  int pairs = 0;           ///< non-degenerate pairs used
};

/// Empirical comparability constants over `samples` seeded random pairs in `box`.
ComparabilityReport comparability_scan(const ScanBox & box, int samples, std::uint64_t seed = 0,
                                       const CCSolverConfig & cfg = {});

}  // namespace geokit
