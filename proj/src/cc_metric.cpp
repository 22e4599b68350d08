#include "geokit/cc_metric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <boost/math/tools/toms748_solve.hpp>

#include "geokit/error.hpp"
#include "geokit/parallel.hpp"
#include "geokit/penalty_solver.hpp"

namespace geokit {

namespace {

constexpr double kPi = std::numbers::pi;

// phi - sin(phi) without cancellation near zero.
double phi_minus_sin(double phi)
{
  if (std::abs(phi) < 0.1) {
    const double p2 = phi * phi;
    return phi * p2 / 6.0 * (1.0 - p2 / 20.0 * (1.0 - p2 / 42.0 * (1.0 - p2 / 72.0)));
  }
  return phi - std::sin(phi);
}

// |t| / r^2 along the geodesic family as a function of the phase, increasing on (0, 2 pi).
double vertical_ratio(double phi)
{
  const double s = std::sin(0.5 * phi);
  return phi_minus_sin(phi) / (2.0 * s * s);
}

struct RadialSolution
{
  double length;
  double phase;  // in [0, 2 pi]
};

RadialSolution solve_radial(double r, double t, const CCSolverConfig & cfg)
{
  r = std::abs(r);
  const double at = std::abs(t);
  if (at == 0) { return {r, 0.0}; }
  if (r == 0) { return {std::sqrt(kPi * at), 2 * kPi}; }

  const double target = at / (r * r);

  // Upper bracket: shrink toward 2 pi until the ratio exceeds the target.
  double gap = 1.0;
  while (vertical_ratio(2 * kPi - gap) <= target) {
    gap *= 0.5;
    if (2 * kPi - gap == 2 * kPi) { return {std::sqrt(kPi * at), 2 * kPi}; }
  }

  auto f = [target](double phi) { return phi == 0 ? -target : vertical_ratio(phi) - target; };
  const int bits = std::clamp(static_cast<int>(std::ceil(-std::log2(cfg.tol))), 8, 52);
  boost::uintmax_t iters = static_cast<boost::uintmax_t>(cfg.max_iter);
  const auto bracket     = boost::math::tools::toms748_solve(f, 0.0, 2 * kPi - gap, -target, f(2 * kPi - gap),
                                                             boost::math::tools::eps_tolerance<double>(bits), iters);
  const double phi = 0.5 * (bracket.first + bracket.second);

  double length;
  if (phi <= kPi) {
    const double half = 0.5 * phi;
    length            = half < 1e-8 ? r * (1.0 + half * half / 6.0) : r * half / std::sin(half);
  } else {
    length = std::sqrt(at * phi * phi / (2.0 * phi_minus_sin(phi)));
  }

  if (static_cast<int>(iters) >= cfg.max_iter) {
    throw UnconvergedError("cc_dist: phase solve did not converge", length);
  }
  return {length, phi};
}

}  // namespace

void CCSolverConfig::validate() const
{
  if (!(tol > 0)) { throw DomainError("CCSolverConfig: tol must be positive"); }
  if (controls_per_path < 2) { throw DomainError("CCSolverConfig: controls_per_path must be >= 2"); }
  if (restarts < 1) { throw DomainError("CCSolverConfig: restarts must be >= 1"); }
  if (max_iter < 1) { throw DomainError("CCSolverConfig: max_iter must be >= 1"); }
}

GeodesicArc::GeodesicArc(HeisPoint start, std::vector<double> direction, double twist, double duration)
    : start_(std::move(start)), direction_(std::move(direction)), twist_(twist), duration_(duration)
{
  if (direction_.size() != static_cast<std::size_t>(2 * start_.n())) {
    throw DomainError("GeodesicArc: direction must have 2n entries");
  }
  double norm2 = 0;
  for (double d : direction_) { norm2 += d * d; }
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) { throw DomainError("GeodesicArc: direction must be unit"); }
  if (!std::isfinite(twist_)) { throw DomainError("GeodesicArc: twist must be finite"); }
  if (!(duration_ >= 0) || !std::isfinite(duration_)) {
    throw DomainError("GeodesicArc: duration must be nonnegative");
  }
}

HeisPoint geodesic_point(const GeodesicArc & arc, double s)
{
  if (!(s >= 0 && s <= arc.duration())) { throw DomainError("geodesic_point: s outside [0, duration]"); }
  const int n        = arc.n();
  const double k     = arc.twist();
  const double phase = k * s;

  // z(s) = w * c(s) with c(s) = (e^{i k s} - 1) / (i k); c(s) -> s as k -> 0.
  std::complex<double> c;
  double t;
  if (std::abs(phase) < 1e-6) {
    // Taylor: c = s (1 + i phase/2 - phase^2/6 - i phase^3/24), t = -2 s^2 (phase/6 - phase^3/120)
    c = s * std::complex<double>(1.0 - phase * phase / 6.0, 0.5 * phase - phase * phase * phase / 24.0);
    t = -2.0 * s * s * (phase / 6.0 - phase * phase * phase / 120.0);
  } else {
    const double h = std::sin(0.5 * phase);
    c              = std::complex<double>(std::sin(phase), 2.0 * h * h) / k;
    t = -2.0 * phi_minus_sin(phase) / (k * k);
  }

  std::vector<double> local(2 * n + 1);
  const auto & dir = arc.direction();
  for (int j = 0; j < n; ++j) {
    const std::complex<double> zj = std::complex<double>(dir[2 * j], dir[2 * j + 1]) * c;
    local[2 * j]     = zj.real();
    local[2 * j + 1] = zj.imag();
  }
  local.back() = t;
  return group_mul(arc.start(), HeisPoint(n, std::move(local)));
}

GeodesicArc geodesic_to(const HeisPoint & p, const HeisPoint & q, const CCSolverConfig & cfg)
{
  cfg.validate();
  const HeisPoint g = group_mul(inverse(p), q);
  const int n       = g.n();
  const double r    = std::sqrt(g.z_norm2());
  const auto sol    = solve_radial(r, g.t(), cfg);

  std::vector<double> dir(2 * n, 0.0);
  if (sol.length == 0) { dir[0] = 1.0; return GeodesicArc(p, dir, 0.0, 0.0); }

  // t < 0 needs counterclockwise turning (positive twist).
  const double phase = g.t() > 0 ? -sol.phase : sol.phase;
  const double twist = phase / sol.length;

  if (r == 0) {
    dir[0] = 1.0;
    return GeodesicArc(p, dir, twist, sol.length);
  }

  // w = z / c(L), c(L) = (e^{i phase} - 1) / (i twist)
  const std::complex<double> cL =
      phase == 0 ? std::complex<double>(sol.length, 0.0)
                 : std::complex<double>(std::sin(phase), 1.0 - std::cos(phase)) / twist;
  double norm2 = 0;
  for (int j = 0; j < n; ++j) {
    const std::complex<double> w = std::complex<double>(g.x(j), g.y(j)) / cL;
    dir[2 * j]     = w.real();
    dir[2 * j + 1] = w.imag();
    norm2 += std::norm(w);
  }
  const double norm = std::sqrt(norm2);
  for (double & d : dir) { d /= norm; }
  return GeodesicArc(p, std::move(dir), twist, sol.length);
}

double cc_radial(double r, double t, const CCSolverConfig & cfg)
{
  cfg.validate();
  if (!std::isfinite(r) || !std::isfinite(t)) { throw DomainError("cc_radial: non-finite input"); }
  return solve_radial(r, t, cfg).length;
}

double cc_dist(const HeisPoint & p, const HeisPoint & q, const CCSolverConfig & cfg)
{
  const HeisPoint g = group_mul(inverse(q), p);
  return cc_radial(std::sqrt(g.z_norm2()), g.t(), cfg);
}

OracleResult cc_oracle(const HeisPoint & p, const HeisPoint & q, int segments, int restarts, std::uint64_t seed)
{
  if (p.n() != q.n()) { throw DomainError("cc_oracle: dimension mismatch"); }
  if (segments < 1 || restarts < 1) { throw DomainError("cc_oracle: segments and restarts must be positive"); }
  if (p == q) { return {0.0, 0.0}; }

  // Solve from the origin to p^{-1} q: the endpoint penalty is not left-invariant,
  // so continuation from p itself can settle in a worse basin.
  const int n           = p.n();
  const HeisPoint start(n);
  const HeisPoint goal  = group_mul(inverse(p), q);
  const double scale    = koranyi_norm(goal);
  const double inv_k    = 1.0 / segments;

  CollocationProblem problem;
  problem.control_dim    = 2 * n;
  problem.segments       = segments;
  problem.constraint_dim = 2 * n + 1;
  problem.control_scale  = scale;
  problem.target_scale   = scale;
  problem.endpoint_gap   = [&start, &goal, n, segments, inv_k](const Eigen::VectorXd & u, Eigen::VectorXd & gap) {
    std::vector<double> z(start.coords().begin(), start.coords().end() - 1);
    double t = start.t();
    for (int k = 0; k < segments; ++k) {
      for (int j = 0; j < n; ++j) {
        const double dx = u[2 * n * k + 2 * j] * inv_k;
        const double dy = u[2 * n * k + 2 * j + 1] * inv_k;
        t += 2.0 * (z[2 * j + 1] * dx - z[2 * j] * dy);
        z[2 * j] += dx;
        z[2 * j + 1] += dy;
      }
    }
    for (int i = 0; i < 2 * n; ++i) { gap[i] = z[i] - goal[i]; }
    gap[2 * n] = t - goal.t();
  };

  CollocationOptions options;
  options.restarts = restarts;
  options.seed     = seed;
  const auto best  = solve_collocation(problem, options);
  return {best.length, best.residual};
}

double eikonal_check(const HeisPoint & q, const HeisPoint & p, double h, const CCSolverConfig & cfg)
{
  if (!(h > 0)) { throw DomainError("eikonal_check: h must be positive"); }
  if (in_center(group_mul(inverse(q), p), 10 * h)) {
    throw DomainError("eikonal_check: p lies within 10h of the center coset of q; d_q is not smooth there");
  }
  const int n = p.n();
  std::vector<double> step(2 * n, 0.0);
  double sum2 = 0;
  for (int i = 0; i < 2 * n; ++i) {
    step[i]          = h;
    const double fwd = cc_dist(flow_horizontal(p, step), q, cfg);
    step[i]          = -h;
    const double bwd = cc_dist(flow_horizontal(p, step), q, cfg);
    step[i]          = 0;
    const double d   = (fwd - bwd) / (2 * h);
    sum2 += d * d;
  }
  return std::sqrt(sum2);
}

int ScanBox::n() const
{
  if (lo.size() != hi.size() || lo.size() < 3 || lo.size() % 2 == 0) {
    throw DomainError("ScanBox: bounds must both have length 2n+1");
  }
  return static_cast<int>((lo.size() - 1) / 2);
}

ScanBox ScanBox::unit(int n)
{
  return {std::vector<double>(2 * n + 1, 0.0), std::vector<double>(2 * n + 1, 1.0)};
}

ComparabilityReport comparability_scan(const ScanBox & box, int samples, std::uint64_t seed,
                                       const CCSolverConfig & cfg)
{
  if (samples < 2) { throw DomainError("comparability_scan: samples must be >= 2"); }
  const int n = box.n();
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    if (!(box.lo[i] <= box.hi[i])) { throw DomainError("comparability_scan: empty box"); }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    std::vector<double> c(box.lo.size());
    for (std::size_t i = 0; i < c.size(); ++i) { c[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * unit(rng); }
    return HeisPoint(n, std::move(c));
  };

  ComparabilityReport rep;
  rep.koranyi_min = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const HeisPoint p = draw();
    const HeisPoint q = draw();
    double euclid2    = 0;
    for (std::size_t i = 0; i < p.dim(); ++i) { euclid2 += (p[i] - q[i]) * (p[i] - q[i]); }
    if (euclid2 == 0) { continue; }
    const double d     = cc_dist(p, q, cfg);
    const double euclid = std::sqrt(euclid2);
    const double dk     = koranyi_dist(p, q);
    rep.c_low           = std::max(rep.c_low, euclid / d);
    rep.c_high          = std::max(rep.c_high, d / std::sqrt(euclid));
    rep.koranyi_min     = std::min(rep.koranyi_min, d / dk);
    rep.koranyi_max     = std::max(rep.koranyi_max, d / dk);
    ++rep.pairs;
  }
  if (rep.pairs == 0) { rep.koranyi_min = 0; }
  rep.c_root = std::max(rep.c_low, rep.c_high);
  return rep;
}

}  // namespace geokit
