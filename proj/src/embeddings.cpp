#include "geokit/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "geokit/cc_metric.hpp"
#include "geokit/error.hpp"
#include "geokit/parallel.hpp"

namespace geokit {

namespace {

using cplx = std::complex<double>;

double target_distance(const std::vector<double> & a, const std::vector<double> & b, TargetMetric metric)
{
  if (a.size() != b.size()) { throw DomainError("target points differ in dimension"); }
  if (metric == TargetMetric::euclidean) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) { s += (a[i] - b[i]) * (a[i] - b[i]); }
    return std::sqrt(s);
  }
  if (a.size() < 3 || a.size() % 2 == 0) { throw DomainError("Heisenberg metric needs points of H^n"); }
  const int n = static_cast<int>((a.size() - 1) / 2);
  const HeisPoint p(n, a), q(n, b);
  return metric == TargetMetric::koranyi ? koranyi_dist(p, q) : cc_dist(p, q);
}

// Orthonormal basis of the tangent space at p (Gram-Schmidt on coordinate axes).
std::vector<std::vector<double>> tangent_frame(const SpherePoint & p)
{
  const std::size_t dim = p.coords().size();
  std::vector<std::vector<double>> frame;
  for (std::size_t axis = 0; axis < dim && frame.size() + 1 < dim; ++axis) {
    std::vector<double> v(dim, 0.0);
    v[axis] = 1.0;
    auto remove = [&v, dim](std::span<const double> u) {
      double dot = 0;
      for (std::size_t i = 0; i < dim; ++i) { dot += v[i] * u[i]; }
      for (std::size_t i = 0; i < dim; ++i) { v[i] -= dot * u[i]; }
    };
    remove(p.coords());
    for (const auto & u : frame) { remove(u); }
    double norm = 0;
    for (double c : v) { norm += c * c; }
    norm = std::sqrt(norm);
    if (norm < 1e-6) { continue; }
    for (double & c : v) { c /= norm; }
    frame.push_back(std::move(v));
  }
  return frame;
}

}  // namespace

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords))
{
  if (coords_.size() < 2) { throw DomainError("SpherePoint: need at least 2 coordinates"); }
  double s = 0;
  for (double c : coords_) {
    if (!std::isfinite(c)) { throw DomainError("SpherePoint: non-finite coordinate"); }
    s += c * c;
  }
  if (std::abs(s - 1.0) > 1e-12) { throw DomainError("SpherePoint: coordinates are not of unit norm"); }
}

SpherePoint SpherePoint::normalized(std::vector<double> v)
{
  double s = 0;
  for (double c : v) { s += c * c; }
  s = std::sqrt(s);
  if (!(s > 0) || !std::isfinite(s)) { throw DomainError("SpherePoint::normalized: zero or non-finite vector"); }
  for (double & c : v) { c /= s; }
  return SpherePoint(std::move(v));
}

double sphere_distance(const SpherePoint & p, const SpherePoint & q)
{
  if (p.n() != q.n()) { throw DomainError("sphere_distance: dimension mismatch"); }
  double chord2 = 0;
  for (std::size_t i = 0; i < p.coords().size(); ++i) { chord2 += (p[i] - q[i]) * (p[i] - q[i]); }
  return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(chord2)));
}

std::vector<SpherePoint> sphere_lattice(int n, int count)
{
  if (count < 1) { throw DomainError("sphere_lattice: count must be positive"); }
  std::vector<SpherePoint> out;
  out.reserve(static_cast<std::size_t>(count));
  if (n == 1) {
    for (int i = 0; i < count; ++i) {
      const double theta = 2 * std::numbers::pi * i / count;
      out.push_back(SpherePoint::normalized({std::cos(theta), std::sin(theta)}));
    }
  } else if (n == 2) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double h     = 1.0 - (2.0 * i + 1.0) / count;
      const double rho   = std::sqrt(std::max(0.0, 1.0 - h * h));
      const double angle = golden * i;
      out.push_back(SpherePoint::normalized({h, rho * std::cos(angle), rho * std::sin(angle)}));
    }
  } else {
    throw DomainError("sphere_lattice: only n = 1, 2 are supported; use sphere_random");
  }
  return out;
}

std::vector<SpherePoint> sphere_random(int n, int count, std::uint64_t seed)
{
  if (n < 1 || count < 0) { throw DomainError("sphere_random: bad arguments"); }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<SpherePoint> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    double s = 0;
    for (double & c : v) { c = normal(rng); s += c * c; }
    if (s < 1e-24) { continue; }
    out.push_back(SpherePoint::normalized(std::move(v)));
  }
  return out;
}

ComplexVec cayley_transform(const ComplexVec & z)
{
  if (z.size() < 2) { throw DomainError("cayley_transform: need n+1 >= 2 complex coordinates"); }
  const cplx last  = z.back();
  const cplx denom = 1.0 + last;
  if (std::abs(denom) < 1e-14) {
    throw DomainError("cayley_transform: south pole z_{n+1} = -1 maps to the point at infinity");
  }
  ComplexVec w(z.size());
  for (std::size_t j = 0; j + 1 < z.size(); ++j) { w[j] = z[j] / denom; }
  w.back() = cplx(0.0, 1.0) * (1.0 - last) / denom;
  return w;
}

ComplexVec unit_rotation(const ComplexVec & z)
{
  if (z.empty()) { throw DomainError("unit_rotation: empty input"); }
  ComplexVec out(z);
  out.back() *= cplx(0.0, 1.0);
  return out;
}

double siegel_defining_function(const ComplexVec & w)
{
  if (w.size() < 2) { throw DomainError("siegel_defining_function: need n+1 >= 2 coordinates"); }
  double s = 0;
  for (std::size_t j = 0; j + 1 < w.size(); ++j) { s += std::norm(w[j]); }
  return w.back().imag() - s;
}

HeisPoint siegel_project(const ComplexVec & w)
{
  if (std::abs(siegel_defining_function(w)) > 1e-8) {
    throw DomainError("siegel_project: point is not on the Siegel boundary");
  }
  const int n = static_cast<int>(w.size()) - 1;
  std::vector<double> c(2 * n + 1);
  for (int j = 0; j < n; ++j) {
    c[2 * j]     = w[j].real();
    c[2 * j + 1] = w[j].imag();
  }
  c.back() = w.back().real();
  return HeisPoint(n, std::move(c));
}

ComplexVec siegel_lift(const HeisPoint & p)
{
  ComplexVec w(static_cast<std::size_t>(p.n()) + 1);
  for (int j = 0; j < p.n(); ++j) { w[j] = cplx(p.x(j), p.y(j)); }
  w.back() = cplx(p.t(), p.z_norm2());
  return w;
}

HeisPoint cayley_phi(std::span<const double> x)
{
  if (x.empty()) { throw DomainError("cayley_phi: need n >= 1 coordinates"); }
  const int n = static_cast<int>(x.size());
  double rho  = 0;
  for (double c : x) {
    if (!std::isfinite(c)) { throw DomainError("cayley_phi: non-finite input; use cayley_phi_infinity"); }
    rho += c * c;
  }

  // real part (rho+1)/(rho^2+1), imaginary part -(rho-1)/(rho^2+1), t = (rho^2-1)/(rho^2+1);
  // rewritten in s = 1/rho for large rho so nothing overflows.
  double re, im, t;
  if (rho <= 1.0) {
    const double d = rho * rho + 1.0;
    re             = (rho + 1.0) / d;
    im             = -(rho - 1.0) / d;
    t              = (rho * rho - 1.0) / d;
  } else {
    const double s = 1.0 / rho;
    const double d = 1.0 + s * s;
    re             = (s + s * s) / d;
    im             = -(s - s * s) / d;
    t              = (1.0 - s * s) / d;
  }
  std::vector<double> c(2 * n + 1);
  for (int j = 0; j < n; ++j) {
    c[2 * j]     = re * x[j];
    c[2 * j + 1] = im * x[j];
  }
  c.back() = t;
  return HeisPoint(n, std::move(c));
}

HeisPoint cayley_phi_infinity(int n)
{
  std::vector<double> c(2 * n + 1, 0.0);
  c.back() = 1.0;
  return HeisPoint(n, std::move(c));
}

HeisPoint cayley_on_sphere(const SpherePoint & p)
{
  const int n      = p.n();
  const double top = p[static_cast<std::size_t>(n)];
  double xp2       = 0;
  for (int j = 0; j < n; ++j) { xp2 += p[j] * p[j]; }
  if (xp2 == 0 && top > 0) { return cayley_phi_infinity(n); }

  // 1/(1 - top) = (1 + top)/|x'|^2 avoids cancellation near the pole.
  const double scale = top > 0 ? (1.0 + top) / xp2 : 1.0 / (1.0 - top);
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) { u[j] = p[j] * scale; }
  return cayley_phi(u);
}

HeisPoint legendrian_F(const SpherePoint & p)
{
  const int n     = p.n();
  const double x0 = p[0];
  std::vector<double> c(2 * n + 1);
  for (int j = 0; j < n; ++j) {
    c[2 * j]     = p[j + 1];
    c[2 * j + 1] = x0 * p[j + 1];
  }
  c.back() = 2.0 / 3.0 * x0 * x0 * x0 - 2.0 * x0;
  return HeisPoint(n, std::move(c));
}

SphereMap legendrian_map()
{
  return [](const SpherePoint & p) {
    const HeisPoint q = legendrian_F(p);
    return std::vector<double>(q.coords().begin(), q.coords().end());
  };
}

SphereMap cayley_map()
{
  return [](const SpherePoint & p) {
    const HeisPoint q = cayley_on_sphere(p);
    return std::vector<double>(q.coords().begin(), q.coords().end());
  };
}

double pullback_defect(const SphereMap & map, const std::vector<SpherePoint> & grid, double mesh)
{
  if (!(mesh > 0)) { throw DomainError("pullback_defect: mesh must be positive"); }
  double worst = 0;
  for (const auto & p : grid) {
    const std::vector<double> fp = map(p);
    if (fp.size() < 3 || fp.size() % 2 == 0) { throw DomainError("pullback_defect: map must land in H^n"); }
    const HeisPoint base(static_cast<int>((fp.size() - 1) / 2), fp);
    for (const auto & e : tangent_frame(p)) {
      std::vector<double> q(p.coords().size());
      for (std::size_t i = 0; i < q.size(); ++i) { q[i] = std::cos(mesh) * p[i] + std::sin(mesh) * e[i]; }
      std::vector<double> fq = map(SpherePoint::normalized(std::move(q)));
      for (std::size_t i = 0; i < fq.size(); ++i) { fq[i] -= fp[i]; }
      worst = std::max(worst, std::abs(contact_form(base, fq)) / mesh);
    }
  }
  return worst;
}

DistortionReport bilip_estimate(const SphereMap & map, int n, TargetMetric metric, int samples, std::uint64_t seed)
{
  if (samples < 2) { throw DomainError("bilip_estimate: samples must be >= 2"); }
  const auto points = sphere_random(n, 2 * samples, seed);

  std::vector<double> ratio(static_cast<std::size_t>(samples), std::numeric_limits<double>::quiet_NaN());
  parallel_for(ratio.size(), [&](std::size_t i) {
    const auto & p = points[2 * i];
    const auto & q = points[2 * i + 1];
    const double ds = sphere_distance(p, q);
    if (ds > 0) { ratio[i] = target_distance(map(p), map(q), metric) / ds; }
  });

  DistortionReport rep;
  rep.lower = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    if (std::isnan(ratio[i])) { continue; }
    ++rep.samples;
    if (ratio[i] < rep.lower) { rep.lower = ratio[i]; rep.argmin_pair = {points[2 * i], points[2 * i + 1]}; }
    if (ratio[i] > rep.upper) { rep.upper = ratio[i]; rep.argmax_pair = {points[2 * i], points[2 * i + 1]}; }
  }
  if (rep.samples == 0) { throw DomainError("bilip_estimate: all sampled pairs were degenerate"); }
  return rep;
}

SeparationReport min_pairwise_separation(const SphereMap & map, const std::vector<SpherePoint> & points,
                                         TargetMetric metric)
{
  if (points.size() < 2) { throw DomainError("min_pairwise_separation: need at least two points"); }
  std::vector<std::vector<double>> images;
  images.reserve(points.size());
  for (const auto & p : points) { images.push_back(map(p)); }

  std::vector<SeparationReport> rows(points.size(), {std::numeric_limits<double>::infinity(),
                                                     std::numeric_limits<double>::infinity()});
  parallel_for(points.size(), [&](std::size_t i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      rows[i].min_target = std::min(rows[i].min_target, target_distance(images[i], images[j], metric));
      rows[i].min_sphere = std::min(rows[i].min_sphere, sphere_distance(points[i], points[j]));
    }
  });
  SeparationReport out = rows.front();
  for (const auto & r : rows) {
    out.min_target = std::min(out.min_target, r.min_target);
    out.min_sphere = std::min(out.min_sphere, r.min_sphere);
  }
  return out;
}

}  // namespace geokit
