#include "geokit/grushin.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "geokit/error.hpp"
#include "geokit/penalty_solver.hpp"

namespace geokit {

namespace {

constexpr double kPi = std::numbers::pi;

double segment_length(const std::vector<double> & a, const std::vector<double> & b, int order)
{
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double xm = 0.5 * (a[0] + b[0]);
  if (dy == 0) { return std::abs(dx); }
  if (xm == 0) { throw DomainError("grushin_length: vertical motion on the axis has infinite length"); }
  const double v = dy / std::pow(std::abs(xm), order);
  return std::sqrt(dx * dx + v * v);
}

}  // namespace

void GrushinGeodesic::validate() const
{
  if (m < 1) { throw DomainError("GrushinGeodesic: m must be >= 1"); }
  if (!(y1 > 0) || !std::isfinite(y1)) { throw DomainError("GrushinGeodesic: y1 must be positive"); }
  if (sign != 1 && sign != -1) { throw DomainError("GrushinGeodesic: sign must be +1 or -1"); }
}

std::pair<double, double> grushin_geodesic_point(const GrushinGeodesic & g, double t)
{
  g.validate();
  if (!(t >= 0 && t <= 1)) { throw DomainError("grushin_geodesic_point: t outside [0, 1]"); }
  const double mt = g.m * t;
  if (mt == std::floor(mt)) { return {0.0, g.y1 * t}; }
  const double w = g.m * kPi;
  const double x = g.sign * std::sqrt(2 * g.y1 / w) * std::sin(w * t);
  const double y = g.y1 * (t - std::sin(2 * w * t) / (2 * w));
  return {x, y};
}

SampledCurve grushin_geodesic_curve(const GrushinGeodesic & g, int samples)
{
  if (samples < 2) { throw DomainError("grushin_geodesic_curve: need at least 2 samples"); }
  std::vector<double> params(static_cast<std::size_t>(samples));
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    params[i]      = t;
    // m t integral: the arch returns to the axis at (0, y1 t) exactly.
    if ((static_cast<long long>(g.m) * i) % (samples - 1) == 0) {
      pts[i] = {0.0, g.y1 * t};
    } else {
      const auto [x, y] = grushin_geodesic_point(g, t);
      pts[i]            = {x, y};
    }
  }
  return SampledCurve(std::move(params), std::move(pts));
}

double grushin_geodesic_length(const GrushinGeodesic & g)
{
  g.validate();
  return std::sqrt(2 * kPi * g.m * g.y1);
}

double grushin_length(const SampledCurve & curve, AxisPolicy policy, int order)
{
  if (curve.dim() != 2) { throw DomainError("grushin_length: curve must be planar"); }
  if (order < 1) { throw DomainError("grushin_length: order must be >= 1"); }
  const std::size_t last = curve.size() - 1;

  std::vector<std::size_t> cuts{0};
  for (std::size_t i = 0; i <= last; ++i) {
    const bool on_axis  = curve.point(i)[0] == 0;
    const bool endpoint = i == 0 || i == last;
    if (on_axis && policy == AxisPolicy::forbid) {
      throw DomainError("grushin_length: sample " + std::to_string(i) + " lies on the axis x = 0");
    }
    if (on_axis && !endpoint) {
      if (policy != AxisPolicy::split) {
        throw DomainError("grushin_length: interior sample " + std::to_string(i) + " lies on the axis x = 0");
      }
      cuts.push_back(i);
    }
    if (i > 0 && curve.point(i)[0] * curve.point(i - 1)[0] < 0) {
      throw DomainError("grushin_length: curve crosses the axis between samples " + std::to_string(i - 1) + " and "
                        + std::to_string(i));
    }
  }
  cuts.push_back(last);

  // Richardson step over the two segments touching an axis endpoint (second-order rule).
  auto pair_length = [&](std::size_t a) {
    const double fine   = segment_length(curve.point(a), curve.point(a + 1), order)
                        + segment_length(curve.point(a + 1), curve.point(a + 2), order);
    const double coarse = segment_length(curve.point(a), curve.point(a + 2), order);
    return fine + (fine - coarse) / 3.0;
  };

  double total = 0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    std::size_t begin = cuts[c];
    std::size_t end   = cuts[c + 1];
    if (end - begin >= 4) {
      if (curve.point(begin)[0] == 0) {
        total += pair_length(begin);
        begin += 2;
      }
      if (curve.point(end)[0] == 0) {
        total += pair_length(end - 2);
        end -= 2;
      }
    }
    for (std::size_t i = begin; i < end; ++i) { total += segment_length(curve.point(i), curve.point(i + 1), order); }
  }
  return total;
}

OracleResult grushin_oracle(std::pair<double, double> p, std::pair<double, double> q, int segments, int restarts,
                            std::uint64_t seed)
{
  if (segments < 1 || restarts < 1) { throw DomainError("grushin_oracle: segments and restarts must be positive"); }
  if (p == q) { return {0.0, 0.0}; }
  const double scale = std::abs(q.first - p.first) + std::sqrt(std::abs(q.second - p.second));
  const double inv_k = 1.0 / segments;

  CollocationProblem problem;
  problem.control_dim    = 2;
  problem.segments       = segments;
  problem.constraint_dim = 2;
  problem.control_scale  = scale;
  problem.target_scale   = scale;
  problem.endpoint_gap   = [p, q, segments, inv_k](const Eigen::VectorXd & u, Eigen::VectorXd & gap) {
    double x = p.first, y = p.second;
    for (int k = 0; k < segments; ++k) {
      const double x_next = x + u[2 * k] * inv_k;
      // exact for x linear on the segment: dy = b x dt
      y += u[2 * k + 1] * inv_k * 0.5 * (x + x_next);
      x = x_next;
    }
    gap[0] = x - q.first;
    gap[1] = y - q.second;
  };

  CollocationOptions options;
  options.restarts = restarts;
  options.seed     = seed;
  const auto best  = solve_collocation(problem, options);
  return {best.length, best.residual};
}

double grushin_dist(std::pair<double, double> p, std::pair<double, double> q, const CCSolverConfig & cfg)
{
  cfg.validate();
  for (double c : {p.first, p.second, q.first, q.second}) {
    if (!std::isfinite(c)) { throw DomainError("grushin_dist: non-finite input"); }
  }
  if (p.first == 0 && q.first == 0) { return std::sqrt(2 * kPi * std::abs(q.second - p.second)); }
  if (p.second == q.second) { return std::abs(q.first - p.first); }

  const auto best = grushin_oracle(p, q, cfg.controls_per_path, cfg.restarts, cfg.seed);
  const double scale = std::abs(q.first - p.first) + std::sqrt(std::abs(q.second - p.second));
  if (best.residual > 1e-6 * scale) {
    throw UnconvergedError("grushin_dist: collocation did not reach the endpoint", best.length);
  }
  return best.length;
}

double grushin_curvature(double x)
{
  if (x == 0 || !std::isfinite(x)) { throw DomainError("grushin_curvature: metric degenerates on the axis x = 0"); }
  return -2.0 / (x * x);
}

double brioschi_curvature(const MetricCoefficient & E, const MetricCoefficient & G, double x, double y, double h)
{
  if (!(h > 0)) { throw DomainError("brioschi_curvature: h must be positive"); }
  auto root = [&](double a, double b) { return std::sqrt(E(a, b) * G(a, b)); };
  auto gx_over_root = [&](double a, double b) { return (G(a + h, b) - G(a - h, b)) / (2 * h) / root(a, b); };
  auto ey_over_root = [&](double a, double b) { return (E(a, b + h) - E(a, b - h)) / (2 * h) / root(a, b); };

  const double d1 = (gx_over_root(x + h, y) - gx_over_root(x - h, y)) / (2 * h);
  const double d2 = (ey_over_root(x, y + h) - ey_over_root(x, y - h)) / (2 * h);
  return -(d1 + d2) / (2 * root(x, y));
}

}  // namespace geokit
