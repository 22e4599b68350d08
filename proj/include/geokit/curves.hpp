#pragma once

#include <cstddef>
#include <vector>

namespace geokit {

/// Ordered samples of a curve in R^k: planar curves in C^n (k = 2n), lifted curves
/// in H^n (k = 2n + 1), Grushin curves (k = 2).
class SampledCurve
{
public:
  /// Throws DomainError unless params are strictly increasing, sizes agree, there
  /// are at least two samples, all points share one dimension, and a closed curve
  /// ends where it starts (within 1e-9).
  SampledCurve(std::vector<double> params, std::vector<std::vector<double>> points, bool closed = false);

  /// Uniform parameter s_i = i / (N - 1) on [0, 1].
  static SampledCurve uniform(std::vector<std::vector<double>> points, bool closed = false);

  std::size_t size() const noexcept { return params_.size(); }
  std::size_t dim() const noexcept { return points_.front().size(); }
  bool closed() const noexcept { return closed_; }

  const std::vector<double> & params() const noexcept { return params_; }
  const std::vector<std::vector<double>> & points() const noexcept { return points_; }
  const std::vector<double> & point(std::size_t i) const { return points_[i]; }

private:
  std::vector<double> params_;
  std::vector<std::vector<double>> points_;
  bool closed_;
};

/// Lifts a curve in R^{2n} to H^n by integrating dt = 2 sum_j (y_j dx_j - x_j dy_j)
/// with the trapezoid rule, starting at t(s_0) = t0.
SampledCurve horizontal_lift(const SampledCurve & planar, double t0 = 0.0);

/// Worst per-unit-parameter violation of the contact condition over all segments,
/// |dt + 2 sum_j (xbar_j dy_j - ybar_j dx_j)| / ds with midpoint xbar, ybar.
double contact_defect(const SampledCurve & curve);

/// Index of the segment attaining contact_defect().
std::size_t worst_contact_segment(const SampledCurve & curve);

/// Sum of Euclidean lengths of the z-projections of the increments. Throws
/// DomainError naming the worst segment if the contact defect exceeds `tol`.
double horizontal_length(const SampledCurve & curve, double tol = 1e-6);

/// Polyline length in the ambient Euclidean metric.
double euclidean_length(const SampledCurve & curve);

/// Applies the left translation by g (given in coordinates) to every point.
SampledCurve left_translate(const SampledCurve & curve, const std::vector<double> & g);

}  // namespace geokit
