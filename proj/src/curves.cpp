#include "geokit/curves.hpp"

#include <cmath>
#include <string>

#include "geokit/error.hpp"
#include "geokit/heis.hpp"

namespace geokit {

namespace {

int heis_index(const SampledCurve & curve)
{
  if (curve.dim() < 3 || curve.dim() % 2 == 0) {
    throw DomainError("expected a curve in H^n (odd dimension >= 3), got dimension " + std::to_string(curve.dim()));
  }
  return static_cast<int>((curve.dim() - 1) / 2);
}

double segment_defect(const SampledCurve & curve, std::size_t i, int n)
{
  const auto & a = curve.point(i);
  const auto & b = curve.point(i + 1);
  double form    = b.back() - a.back();
  for (int j = 0; j < n; ++j) {
    const double xm = 0.5 * (a[2 * j] + b[2 * j]);
    const double ym = 0.5 * (a[2 * j + 1] + b[2 * j + 1]);
    form += 2.0 * (xm * (b[2 * j + 1] - a[2 * j + 1]) - ym * (b[2 * j] - a[2 * j]));
  }
  return std::abs(form) / (curve.params()[i + 1] - curve.params()[i]);
}

}  // namespace

SampledCurve::SampledCurve(std::vector<double> params, std::vector<std::vector<double>> points, bool closed)
    : params_(std::move(params)), points_(std::move(points)), closed_(closed)
{
  if (params_.size() != points_.size()) { throw DomainError("SampledCurve: params and points differ in length"); }
  if (params_.size() < 2) { throw DomainError("SampledCurve: need at least 2 samples"); }
  const std::size_t k = points_.front().size();
  if (k == 0) { throw DomainError("SampledCurve: empty points"); }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != k) { throw DomainError("SampledCurve: inconsistent point dimension"); }
    for (double c : points_[i]) {
      if (!std::isfinite(c)) { throw DomainError("SampledCurve: non-finite coordinate"); }
    }
    if (i > 0 && !(params_[i] > params_[i - 1])) {
      throw DomainError("SampledCurve: params must be strictly increasing");
    }
  }
  if (closed_) {
    double gap2 = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const double d = points_.back()[c] - points_.front()[c];
      gap2 += d * d;
    }
    if (std::sqrt(gap2) > 1e-9) { throw DomainError("SampledCurve: closed curve does not end at its start"); }
  }
}

SampledCurve SampledCurve::uniform(std::vector<std::vector<double>> points, bool closed)
{
  const std::size_t n = points.size();
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) { s[i] = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0; }
  return SampledCurve(std::move(s), std::move(points), closed);
}

SampledCurve horizontal_lift(const SampledCurve & planar, double t0)
{
  if (planar.dim() % 2 != 0) { throw DomainError("horizontal_lift: planar curve must live in R^{2n}"); }
  const std::size_t n = planar.dim() / 2;

  std::vector<std::vector<double>> lifted;
  lifted.reserve(planar.size());
  double t = t0;
  for (std::size_t i = 0; i < planar.size(); ++i) {
    const auto & p = planar.point(i);
    if (i > 0) {
      const auto & q = planar.point(i - 1);
      for (std::size_t j = 0; j < n; ++j) {
        const double xm = 0.5 * (p[2 * j] + q[2 * j]);
        const double ym = 0.5 * (p[2 * j + 1] + q[2 * j + 1]);
        t += 2.0 * (ym * (p[2 * j] - q[2 * j]) - xm * (p[2 * j + 1] - q[2 * j + 1]));
      }
    }
    std::vector<double> row(p);
    row.push_back(t);
    lifted.push_back(std::move(row));
  }
  // A closed planar loop generally lifts to an open curve (nonzero holonomy).
  return SampledCurve(planar.params(), std::move(lifted), false);
}

double contact_defect(const SampledCurve & curve)
{
  const int n  = heis_index(curve);
  double worst = 0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) { worst = std::max(worst, segment_defect(curve, i, n)); }
  return worst;
}

std::size_t worst_contact_segment(const SampledCurve & curve)
{
  const int n       = heis_index(curve);
  std::size_t index = 0;
  double worst      = -1;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double d = segment_defect(curve, i, n);
    if (d > worst) { worst = d; index = i; }
  }
  return index;
}

double horizontal_length(const SampledCurve & curve, double tol)
{
  const int n = heis_index(curve);
  if (const double defect = contact_defect(curve); defect > tol) {
    throw DomainError("horizontal_length: curve is not horizontal; contact defect " + std::to_string(defect)
                      + " at segment " + std::to_string(worst_contact_segment(curve)));
  }
  double length = 0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    double s2 = 0;
    for (int c = 0; c < 2 * n; ++c) {
      const double d = curve.point(i + 1)[c] - curve.point(i)[c];
      s2 += d * d;
    }
    length += std::sqrt(s2);
  }
  return length;
}

double euclidean_length(const SampledCurve & curve)
{
  double length = 0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    double s2 = 0;
    for (std::size_t c = 0; c < curve.dim(); ++c) {
      const double d = curve.point(i + 1)[c] - curve.point(i)[c];
      s2 += d * d;
    }
    length += std::sqrt(s2);
  }
  return length;
}

SampledCurve left_translate(const SampledCurve & curve, const std::vector<double> & g)
{
  const int n = heis_index(curve);
  const HeisPoint left(n, g);
  std::vector<std::vector<double>> out;
  out.reserve(curve.size());
  for (const auto & p : curve.points()) {
    const HeisPoint moved = group_mul(left, HeisPoint(n, p));
    out.emplace_back(moved.coords().begin(), moved.coords().end());
  }
  return SampledCurve(curve.params(), std::move(out), curve.closed());
}

}  // namespace geokit
