#pragma once

/**
 * @file
 * @brief Grushin plane: frame {d/dx, x d/dy}, Riemannian off the axis x = 0 with
 * ds^2 = dx^2 + x^{-2} dy^2.
 */

#include <functional>
#include <utility>

#include "geokit/cc_metric.hpp"
#include "geokit/curves.hpp"

namespace geokit {

/// One member of the family of geodesics from (0, 0) to (0, y1):
///   x(t) = sign sqrt(2 y1 / (m pi)) sin(m pi t),
///   y(t) = y1 (t - sin(2 m pi t) / (2 m pi)),   t in [0, 1].
struct GrushinGeodesic
{
  int m     = 1;
  double y1 = 1.0;
  int sign  = 1;

  void validate() const;
};

std::pair<double, double> grushin_geodesic_point(const GrushinGeodesic & g, double t);

/// `samples` points at t_i = i / (samples - 1). Samples with m t_i an integer lie
/// exactly on the axis.
SampledCurve grushin_geodesic_curve(const GrushinGeodesic & g, int samples);

/// Exact length of the family member, sqrt(2 pi m y1).
double grushin_geodesic_length(const GrushinGeodesic & g);

enum class AxisPolicy
{
  forbid,          ///< no sample may touch the axis
  endpoints_only,  ///< first and last samples may lie on the axis
  split,           ///< any sample may lie on the axis; the curve is cut there
};

/// Length of a sampled curve for ds^2 = dx^2 + x^{-2 order} dy^2 using midpoint
/// values of x per segment. Segments adjacent to an axis endpoint are corrected by
/// one Richardson step; under AxisPolicy::split every arch between axis samples is
/// treated that way. Throws DomainError on axis contact the policy forbids or on a
/// sign change of x between samples.
double grushin_length(const SampledCurve & curve, AxisPolicy policy = AxisPolicy::forbid, int order = 1);

/// Sub-Riemannian distance. Axis pairs use the geodesic family (m = 1 minimizes);
/// other pairs are solved by collocation over horizontal controls.
double grushin_dist(std::pair<double, double> p, std::pair<double, double> q, const CCSolverConfig & cfg = {});

/// Collocation-only estimate (independent of the geodesic family).
OracleResult grushin_oracle(std::pair<double, double> p, std::pair<double, double> q, int segments, int restarts,
                            std::uint64_t seed = 0);

/// Gauss curvature of the G_1 Riemannian part, -2 / x^2.
double grushin_curvature(double x);

using MetricCoefficient = std::function<double(double, double)>;

/// Brioschi's formula for an orthogonal metric E dx^2 + G dy^2,
///   K = -1/(2 sqrt(EG)) [ (G_x / sqrt(EG))_x + (E_y / sqrt(EG))_y ],
/// with every derivative taken by central differences of step h.
double brioschi_curvature(const MetricCoefficient & E, const MetricCoefficient & G, double x, double y, double h);

}  // namespace geokit
