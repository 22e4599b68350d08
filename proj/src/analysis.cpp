#include "geokit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "geokit/error.hpp"
#include "geokit/heis.hpp"
#include "geokit/parallel.hpp"

namespace geokit {

namespace {

// Fixed-shape binary tree reduction: the result depends only on the input order.
double pairwise_sum(std::span<const double> v)
{
  if (v.size() <= 8) {
    double s = 0;
    for (double x : v) { s += x; }
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct NodeGradient
{
  double norm     = std::numeric_limits<double>::quiet_NaN();  // |grad f|_H
  double vertical = 0;                                         // max_k |alpha(d_k f)|
  double relative = 0;                                         // max_k |alpha(d_k f)| / |d_k f|
};

std::vector<NodeGradient> node_gradients(const GridMap & f)
{
  if (f.codomain() != Codomain::heisenberg) { throw DomainError("expected a map into H^n"); }
  std::vector<NodeGradient> out(f.node_count());
  const std::size_t chunk = 4096;
  const std::size_t jobs  = (f.node_count() + chunk - 1) / chunk;
  parallel_for(jobs, [&](std::size_t job) {
    const std::size_t end = std::min(f.node_count(), (job + 1) * chunk);
    for (std::size_t node = job * chunk; node < end; ++node) {
      if (!f.present(node)) { continue; }
      const auto p = f.value(node);
      NodeGradient g;
      double sum2 = 0;
      for (int axis = 0; axis < f.m(); ++axis) {
        const auto w     = f.partial(node, axis);
        const auto split = split_frame(p, w);
        double wn2       = 0;
        for (double c : w) { wn2 += c * c; }
        for (double c : split.horizontal) { sum2 += c * c; }
        const double v = std::abs(split.vertical);
        g.vertical     = std::max(g.vertical, v);
        if (wn2 > 0) { g.relative = std::max(g.relative, v / std::sqrt(wn2)); }
      }
      g.norm    = std::sqrt(sum2);
      out[node] = g;
    }
  });
  return out;
}

double energy_where(const GridMap & f, double p, double contact_tol, const std::function<bool(double)> & keep_radius)
{
  if (!(p >= 1)) { throw DomainError("horizontal_energy: p must be >= 1"); }
  const auto grads = node_gradients(f);
  std::vector<double> terms;
  terms.reserve(f.present_count());
  double worst = 0;
  for (std::size_t node = 0; node < f.node_count(); ++node) {
    if (!f.present(node)) { continue; }
    worst = std::max(worst, grads[node].relative);
    if (!keep_radius(f.radius(node))) { continue; }
    terms.push_back(std::pow(grads[node].norm, p) * f.weight(node));
  }
  if (worst > contact_tol) {
    throw DomainError("horizontal_energy: relative contact residual " + std::to_string(worst)
                      + " exceeds tolerance; the map is not horizontal at this resolution");
  }
  return pairwise_sum(terms);
}

double segment_distance(const std::vector<double> & a, const std::vector<double> & b, std::span<const double> c)
{
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double s          = len2 > 0 ? ((c[0] - a[0]) * dx + (c[1] - a[1]) * dy) / len2 : 0.0;
  s                 = std::clamp(s, 0.0, 1.0);
  return std::hypot(a[0] + s * dx - c[0], a[1] + s * dy - c[1]);
}

// Antiderivative of sqrt(1 - x^2) on [-1, 1].
double half_disk_primitive(double x)
{
  x = std::clamp(x, -1.0, 1.0);
  return 0.5 * (x * std::sqrt(1.0 - x * x) + std::asin(x));
}

}  // namespace

std::vector<double> cavitation(std::span<const double> x)
{
  double r2 = 0;
  for (double c : x) { r2 += c * c; }
  if (!(r2 > 0)) { throw DomainError("cavitation: undefined at the origin"); }
  const double r = std::sqrt(r2);
  std::vector<double> out(x.begin(), x.end());
  for (double & c : out) { c /= r; }
  return out;
}

GridMap compose_on_grid(const SphereMap & psi, int n, double h, double eps)
{
  if (n < 1) { throw DomainError("compose_on_grid: n must be positive"); }
  if (!(h > 0)) { throw DomainError("compose_on_grid: h must be positive"); }
  if (!(eps >= 2 * h)) { throw DomainError("compose_on_grid: eps must be >= 2h so stencils avoid the puncture"); }
  auto f = [&psi](std::span<const double> x) { return psi(SpherePoint::normalized(cavitation(x))); };
  return GridMap::sample_ball(n + 1, 1.0, eps, h, 2 * n + 1, Codomain::heisenberg, f);
}

FrameSplit split_frame(std::span<const double> p, std::span<const double> w)
{
  if (p.size() != w.size() || p.size() < 3 || p.size() % 2 == 0) {
    throw DomainError("split_frame: expected a point of H^n and a vector of the same length");
  }
  const std::size_t n = (p.size() - 1) / 2;
  FrameSplit out;
  out.horizontal.assign(w.begin(), w.end() - 1);
  double s = 0;
  for (std::size_t j = 0; j < n; ++j) { s += p[2 * j] * w[2 * j + 1] - p[2 * j + 1] * w[2 * j]; }
  out.vertical = w.back() + 2.0 * s;
  return out;
}

double contact_residual(const GridMap & f)
{
  double worst = 0;
  for (const auto & g : node_gradients(f)) { worst = std::max(worst, g.vertical); }
  return worst;
}

double contact_residual_relative(const GridMap & f)
{
  double worst = 0;
  for (const auto & g : node_gradients(f)) { worst = std::max(worst, g.relative); }
  return worst;
}

std::vector<double> horizontal_gradient_norms(const GridMap & f)
{
  const auto grads = node_gradients(f);
  std::vector<double> out(grads.size());
  std::transform(grads.begin(), grads.end(), out.begin(), [](const NodeGradient & g) { return g.norm; });
  return out;
}

double horizontal_energy(const GridMap & f, double p, double contact_tol)
{
  return energy_where(f, p, contact_tol, [](double) { return true; });
}

std::vector<double> annular_energies(const GridMap & f, double p, std::span<const double> radii, double contact_tol)
{
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    if (!(radii[i] > radii[i + 1])) { throw DomainError("annular_energies: radii must be strictly decreasing"); }
  }
  if (radii.size() < 2) { return {}; }
  if (!(p >= 1)) { throw DomainError("annular_energies: p must be >= 1"); }

  const auto grads = node_gradients(f);
  std::vector<std::vector<double>> terms(radii.size() - 1);
  double worst = 0;
  for (std::size_t node = 0; node < f.node_count(); ++node) {
    if (!f.present(node)) { continue; }
    worst          = std::max(worst, grads[node].relative);
    const double r = f.radius(node);
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
      if (r < radii[i] && r >= radii[i + 1]) {
        terms[i].push_back(std::pow(grads[node].norm, p) * f.weight(node));
        break;
      }
    }
  }
  if (worst > contact_tol) {
    throw DomainError("annular_energies: relative contact residual " + std::to_string(worst) + " exceeds tolerance");
  }
  std::vector<double> out;
  for (const auto & t : terms) { out.push_back(pairwise_sum(t)); }
  return out;
}

double energy_outside(const GridMap & f, double p, double eps, double contact_tol)
{
  return energy_where(f, p, contact_tol, [eps](double r) { return r >= eps; });
}

int winding_number(const SampledCurve & curve, std::span<const double> point)
{
  if (curve.dim() != 2 || point.size() != 2) { throw DomainError("winding_number: planar curve and point required"); }
  const auto & first = curve.point(0);
  const auto & last  = curve.point(curve.size() - 1);
  if (!curve.closed() && std::hypot(first[0] - last[0], first[1] - last[1]) > 1e-9) {
    throw DomainError("winding_number: curve is not closed");
  }

  double scale = 0;
  for (const auto & p : curve.points()) { scale = std::max(scale, std::hypot(p[0] - point[0], p[1] - point[1])); }
  double turn = 0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const auto & a = curve.point(i);
    const auto & b = curve.point(i + 1);
    if (segment_distance(a, b, point) <= 1e-12 * std::max(1.0, scale)) {
      throw DomainError("winding_number: point lies on the curve (segment " + std::to_string(i) + ")");
    }
    const double ax = a[0] - point[0], ay = a[1] - point[1];
    const double bx = b[0] - point[0], by = b[1] - point[1];
    turn += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  const double w       = turn / (2 * std::numbers::pi);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 0.01) {
    throw DomainError("winding_number: angle sum " + std::to_string(w) + " is not near an integer");
  }
  return static_cast<int>(rounded);
}

double Polynomial::operator()(std::span<const double> y) const
{
  double s = 0;
  for (const auto & term : terms) {
    double v = term.coeff;
    for (std::size_t i = 0; i < term.powers.size(); ++i) {
      if (term.powers[i] != 0) { v *= std::pow(y[i], term.powers[i]); }
    }
    s += v;
  }
  return s;
}

Polynomial Polynomial::derivative(int var) const
{
  Polynomial d;
  for (const auto & term : terms) {
    if (static_cast<std::size_t>(var) >= term.powers.size() || term.powers[var] == 0) { continue; }
    Polynomial::Term t = term;
    t.coeff *= term.powers[var];
    t.powers[var] -= 1;
    d.terms.push_back(std::move(t));
  }
  return d;
}

double OneForm::apply(std::span<const double> y, std::span<const double> v) const
{
  if (y.size() != coeffs.size() || v.size() != coeffs.size()) { throw DomainError("OneForm: dimension mismatch"); }
  double s = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) { s += coeffs[i](y) * v[i]; }
  return s;
}

double rect_disk_area(double x0, double x1, double y0, double y1)
{
  x0 = std::max(x0, -1.0);
  x1 = std::min(x1, 1.0);
  if (!(x1 > x0) || !(y1 > y0)) { return 0.0; }

  std::vector<double> cuts{x0, x1};
  for (double y : {y0, y1}) {
    if (std::abs(y) < 1) {
      const double c = std::sqrt(1 - y * y);
      for (double xc : {-c, c}) {
        if (xc > x0 && xc < x1) { cuts.push_back(xc); }
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());

  double area = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) { continue; }
    const double mid = 0.5 * (a + b);
    const double s   = std::sqrt(std::max(0.0, 1 - mid * mid));
    const bool top_is_circle    = s < y1;
    const bool bottom_is_circle = -s > y0;
    const double top            = top_is_circle ? s : y1;
    const double bottom         = bottom_is_circle ? -s : y0;
    if (!(top > bottom)) { continue; }
    const double arc = half_disk_primitive(b) - half_disk_primitive(a);
    area += (top_is_circle ? arc : y1 * (b - a)) - (bottom_is_circle ? -arc : y0 * (b - a));
  }
  return area;
}

StokesResult stokes_check(const PlaneMap & g, int l, const OneForm & omega, double h)
{
  if (omega.dim() != l) { throw DomainError("stokes_check: form dimension differs from the target dimension"); }
  if (!(h > 0) || h > 0.5) { throw DomainError("stokes_check: h must be in (0, 0.5]"); }

  StokesResult out;

  // Boundary: trapezoid rule on the closed polygon through g(unit circle).
  const int vertices = std::max(16, static_cast<int>(std::ceil(2 * std::numbers::pi / h)));
  std::vector<std::vector<double>> ring(static_cast<std::size_t>(vertices));
  for (int i = 0; i < vertices; ++i) {
    const double theta = 2 * std::numbers::pi * i / vertices;
    const double x[2]  = {std::cos(theta), std::sin(theta)};
    ring[i]            = g(x);
    if (ring[i].size() != static_cast<std::size_t>(l)) { throw DomainError("stokes_check: map has wrong dimension"); }
  }
  std::vector<double> bterms(static_cast<std::size_t>(vertices));
  std::vector<double> delta(static_cast<std::size_t>(l));
  for (int i = 0; i < vertices; ++i) {
    const auto & a = ring[i];
    const auto & b = ring[(i + 1) % vertices];
    for (int c = 0; c < l; ++c) { delta[c] = b[c] - a[c]; }
    bterms[i] = 0.5 * (omega.apply(a, delta) + omega.apply(b, delta));
  }
  out.boundary = pairwise_sum(bterms);

  // Interior: d omega = sum_{a<b} (d_a P_b - d_b P_a) dy_a ^ dy_b.
  struct Pair { int a, b; Polynomial coeff; };
  std::vector<Pair> two_form;
  for (int a = 0; a < l; ++a) {
    for (int b = a + 1; b < l; ++b) {
      Polynomial c = omega.coeffs[b].derivative(a);
      for (auto t : omega.coeffs[a].derivative(b).terms) {
        t.coeff = -t.coeff;
        c.terms.push_back(std::move(t));
      }
      two_form.push_back({a, b, std::move(c)});
    }
  }

  const GridMap grid = GridMap::sample_ball(2, 1.0 + 2 * h, 0.0, h, l, Codomain::euclidean, g);
  const int side     = grid.extent()[0];
  std::vector<double> iterms;
  std::vector<double> center(static_cast<std::size_t>(l)), dx(static_cast<std::size_t>(l)), dy(static_cast<std::size_t>(l));
  for (int i = 0; i + 1 < side; ++i) {
    for (int j = 0; j + 1 < side; ++j) {
      const int idx00[2] = {i, j};
      const std::size_t n00 = grid.linear_index(idx00);
      const auto x0         = grid.position(n00);
      const double area     = rect_disk_area(x0[0], x0[0] + h, x0[1], x0[1] + h);
      if (area <= 0) { continue; }
      const int idx10[2] = {i + 1, j}, idx01[2] = {i, j + 1}, idx11[2] = {i + 1, j + 1};
      const std::size_t n10 = grid.linear_index(idx10), n01 = grid.linear_index(idx01), n11 = grid.linear_index(idx11);
      if (!grid.present(n00) || !grid.present(n10) || !grid.present(n01) || !grid.present(n11)) {
        throw DomainError("stokes_check: cell touching the disk lacks samples");
      }
      const auto g00 = grid.value(n00), g10 = grid.value(n10), g01 = grid.value(n01), g11 = grid.value(n11);
      for (int c = 0; c < l; ++c) {
        center[c] = 0.25 * (g00[c] + g10[c] + g01[c] + g11[c]);
        dx[c]     = 0.5 * ((g10[c] - g00[c]) + (g11[c] - g01[c])) / h;
        dy[c]     = 0.5 * ((g01[c] - g00[c]) + (g11[c] - g10[c])) / h;
      }
      double density = 0;
      for (const auto & pr : two_form) {
        density += pr.coeff(center) * (dx[pr.a] * dy[pr.b] - dx[pr.b] * dy[pr.a]);
      }
      iterms.push_back(density * area);
    }
  }
  out.interior = pairwise_sum(iterms);
  return out;
}

RankReport rank_check(const EuclideanMap & f, const std::vector<std::vector<double>> & points, double tol, double step)
{
  if (!(tol > 0) || !(step > 0)) { throw DomainError("rank_check: tol and step must be positive"); }
  RankReport rep;
  for (const auto & x : points) {
    const std::size_t m = x.size();
    std::vector<double> probe(x);
    Eigen::MatrixXd jac;
    for (std::size_t a = 0; a < m; ++a) {
      probe[a]       = x[a] + step;
      const auto fp  = f(probe);
      probe[a]       = x[a] - step;
      const auto fm  = f(probe);
      probe[a]       = x[a];
      if (jac.size() == 0) { jac.resize(static_cast<Eigen::Index>(fp.size()), static_cast<Eigen::Index>(m)); }
      for (std::size_t c = 0; c < fp.size(); ++c) { jac(c, a) = (fp[c] - fm[c]) / (2 * step); }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    const auto & sv = svd.singularValues();
    if (rep.max_ratio.size() < static_cast<std::size_t>(sv.size())) { rep.max_ratio.resize(sv.size(), 0.0); }
    int rank = 0;
    if (sv.size() > 0 && sv[0] > 0) {
      for (Eigen::Index i = 0; i < sv.size(); ++i) {
        const double ratio = sv[i] / sv[0];
        rep.max_ratio[i]   = std::max(rep.max_ratio[i], ratio);
        if (ratio > tol) { ++rank; }
      }
    }
    rep.max_rank = std::max(rep.max_rank, rank);
  }
  return rep;
}

}  // namespace geokit
