#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "geokit/cc_metric.hpp"
#include "geokit/curves.hpp"
#include "geokit/error.hpp"

using namespace geokit;

namespace {

HeisPoint random_point(std::mt19937_64 & rng, int n, double lo = -1, double hi = 1)
{
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> c(static_cast<std::size_t>(2 * n + 1));
  for (double & v : c) { v = u(rng); }
  return HeisPoint(n, c);
}

double max_abs_diff(const HeisPoint & a, const HeisPoint & b)
{
  double m = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) { m = std::max(m, std::abs(a[i] - b[i])); }
  return m;
}

SampledCurve sample_arc(const GeodesicArc & arc, int segments)
{
  std::vector<double> s;
  std::vector<std::vector<double>> pts;
  for (int i = 0; i <= segments; ++i) {
    const double si = arc.duration() * i / segments;
    const auto p    = geodesic_point(arc, si);
    s.push_back(si);
    pts.emplace_back(p.coords().begin(), p.coords().end());
  }
  return SampledCurve(std::move(s), std::move(pts));
}

}  // namespace

TEST(CCSolverConfig, Validation)
{
  CCSolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.tol = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.controls_per_path = 1;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.restarts = 0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(GeodesicArc, ConstructionAndStraightLine)
{
  EXPECT_THROW(GeodesicArc(HeisPoint(1), {1, 1}, 0, 1), DomainError);
  EXPECT_THROW(GeodesicArc(HeisPoint(1), {1, 0}, 0, -1), DomainError);

  const GeodesicArc line(HeisPoint(1), {1, 0}, 0, 2);
  EXPECT_EQ(geodesic_point(line, 1), HeisPoint::h1(1, 0, 0));
  EXPECT_EQ(geodesic_point(line, 0), HeisPoint(1));
  EXPECT_THROW(geodesic_point(line, 2.5), DomainError);
  EXPECT_THROW(geodesic_point(line, -0.1), DomainError);

  const HeisPoint start = HeisPoint::h1(0.3, -0.2, 1.5);
  EXPECT_EQ(geodesic_point(GeodesicArc(start, {0.6, 0.8}, 3.0, 1.0), 0.0), start);
}

TEST(GeodesicArc, TaylorBranchIsContinuous)
{
  // Phases on both sides of the 1e-6 switch between the series and the closed
  // form, against the Maclaurin series to fifth order in long double.
  for (double k : {0.5e-6, 0.999e-6, 1.001e-6, 2e-6, -1.001e-6}) {
    const long double kl = k, k2 = kl * kl;
    const long double x  = 1 - k2 / 6 + k2 * k2 / 120;
    const long double y  = kl / 2 - kl * k2 / 24 + kl * k2 * k2 / 720;
    const long double t  = -2 * (kl / 6 - kl * k2 / 120 + kl * k2 * k2 / 5040);
    const auto p         = geodesic_point(GeodesicArc(HeisPoint(1), {1, 0}, k, 1.0), 1.0);
    EXPECT_NEAR(p[0], static_cast<double>(x), 1e-15) << k;
    EXPECT_NEAR(p[1], static_cast<double>(y), 1e-15) << k;
    EXPECT_NEAR(p[2], static_cast<double>(t), 1e-15) << k;
  }
}

TEST(GeodesicArc, UnitSpeedAndQuadraticContactDefect)
{
  const GeodesicArc arc(HeisPoint::h1(0.1, 0.2, 0.3), {0.6, -0.8}, 2.5, 2.0);

  // central-difference speed of the z-projection
  for (double s : {0.3, 1.0, 1.7}) {
    const double h = 1e-5;
    const auto a = geodesic_point(arc, s - h), b = geodesic_point(arc, s + h);
    EXPECT_NEAR(std::hypot(b.x(0) - a.x(0), b.y(0) - a.y(0)) / (2 * h), 1.0, 1e-8);
  }

  double prev = contact_defect(sample_arc(arc, 50));
  for (int k = 100; k <= 800; k *= 2) {
    const double cur = contact_defect(sample_arc(arc, k));
    EXPECT_GE(std::log2(prev / cur), 1.9) << "segments " << k;
    prev = cur;
  }
}

TEST(GeodesicTo, ReachesTargetWithDistanceAsLength)
{
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const int n  = 1 + i % 3;
    const auto p = random_point(rng, n), q = random_point(rng, n);
    const auto arc = geodesic_to(p, q);
    EXPECT_LE(max_abs_diff(geodesic_point(arc, arc.duration()), q), 1e-9);
    EXPECT_NEAR(arc.duration(), cc_dist(p, q), 1e-12);
  }
  // center targets, both signs of t
  for (double t : {1.0, -2.0}) {
    const HeisPoint q = HeisPoint::h1(0, 0, t);
    const auto arc    = geodesic_to(HeisPoint(1), q);
    EXPECT_LE(max_abs_diff(geodesic_point(arc, arc.duration()), q), 1e-12);
  }
}

TEST(CCDist, LinesThroughOrigin)
{
  std::mt19937_64 rng(22);
  std::normal_distribution<double> g;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    std::vector<double> c(static_cast<std::size_t>(2 * n + 1), 0.0);
    double r2 = 0;
    for (int k = 0; k < 2 * n; ++k) {
      c[k] = g(rng);
      r2 += c[k] * c[k];
    }
    EXPECT_NEAR(cc_dist(HeisPoint(n), HeisPoint(n, c)), std::sqrt(r2), 1e-12);
  }
}

TEST(CCDist, CenterMatchesIsoperimetricBound)
{
  // A closed horizontal loop of length L lifts to |t| = 4 * area <= L^2 / pi, with
  // equality for circles.
  for (double t : {0.25, 1.0, -4.0}) {
    EXPECT_NEAR(cc_dist(HeisPoint(1), HeisPoint::h1(0, 0, t)), std::sqrt(std::numbers::pi * std::abs(t)), 1e-12);
  }
}

TEST(CCDist, MetricAxiomsAndInvariances)
{
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.2, 5);
  const double tol = 1e-10;
  for (int i = 0; i < 500; ++i) {
    const int n  = 1 + i % 2;
    const auto p = random_point(rng, n), q = random_point(rng, n), r = random_point(rng, n);
    const auto g = random_point(rng, n, -3, 3);
    const double d = cc_dist(p, q);
    EXPECT_NEAR(cc_dist(q, p), d, tol);
    EXPECT_LE(d, cc_dist(p, r) + cc_dist(r, q) + tol);
    EXPECT_NEAR(cc_dist(group_mul(g, p), group_mul(g, q)), d, tol * (1 + d));
    const double s = u(rng);
    EXPECT_NEAR(cc_dist(dilate(s, p), dilate(s, q)), s * d, tol * (1 + s * d));
  }
  EXPECT_EQ(cc_dist(HeisPoint::h1(0.5, 0.5, 0.5), HeisPoint::h1(0.5, 0.5, 0.5)), 0.0);
}

TEST(CCDist, KoranyiComparable)
{
  std::mt19937_64 rng(24);
  double lo = 1e9, hi = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto p = random_point(rng, 1, 0, 1), q = random_point(rng, 1, 0, 1);
    const double ratio = cc_dist(p, q) / koranyi_dist(p, q);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  // extremes are attained on lines (ratio 1) and on the center (sqrt(pi))
  EXPECT_GE(lo, 1.0 - 1e-12);
  EXPECT_LE(hi, std::sqrt(std::numbers::pi) + 1e-12);
}

TEST(CCOracle, TrivialAndLine)
{
  EXPECT_EQ(cc_oracle(HeisPoint(1), HeisPoint(1), 16, 2).length, 0.0);
  const auto line = cc_oracle(HeisPoint(1), HeisPoint::h1(1, 0, 0), 32, 8);
  EXPECT_NEAR(line.length, 1.0, 1e-2);
  EXPECT_LE(line.residual, 1e-6);
}

TEST(CCOracle, DominatesSolverAndImprovesWithK)
{
  std::mt19937_64 rng(25);
  for (int i = 0; i < 3; ++i) {
    const auto p = random_point(rng, 1, 0, 1), q = random_point(rng, 1, 0, 1);
    const double d  = cc_dist(p, q);
    const auto o16  = cc_oracle(p, q, 16, 8, 7);
    const auto o64  = cc_oracle(p, q, 64, 8, 7);
    EXPECT_LE(o64.residual, 1e-6 * koranyi_dist(p, q));
    EXPECT_LE(d, o64.length + 1e-9);
    EXPECT_LE(o64.length, o16.length + 1e-9);
    EXPECT_LE((o64.length - d) / o64.length, 0.02);
  }
}

TEST(CCOracle, CenterPointAgreesWithSolver)
{
  const auto o = cc_oracle(HeisPoint(1), HeisPoint::h1(0, 0, 1), 64, 8);
  EXPECT_LE(std::abs(o.length - cc_dist(HeisPoint(1), HeisPoint::h1(0, 0, 1))) / o.length, 0.02);
}

TEST(CCOracle, NearCenterTargetFromTranslatedBase)
{
  // nearly a full turn, seen from a base point away from the origin
  const HeisPoint p = HeisPoint::h1(0.234342, 0.214763, 0.366742);
  const HeisPoint q = group_mul(p, HeisPoint::h1(-0.0697886, 0.0758249, 0.598126));
  const auto o      = cc_oracle(p, q, 64, 8, 38);
  EXPECT_LE(o.residual, 1e-9);
  EXPECT_NEAR(o.length / cc_dist(p, q), 1.0, 2e-3);
}

TEST(CCOracle, RotationalReduction)
{
  // The radial reduction assumes U(n) symmetry; the oracle never uses it.
  const HeisPoint p = HeisPoint::h1(0.8, 0.0, 0.5);
  const double c = std::cos(1.1), s = std::sin(1.1);
  const HeisPoint rp = HeisPoint::h1(0.8 * c, 0.8 * s, 0.5);
  const auto a = cc_oracle(HeisPoint(1), p, 48, 6, 3);
  const auto b = cc_oracle(HeisPoint(1), rp, 48, 6, 3);
  EXPECT_NEAR(a.length, b.length, 1e-3 * a.length);

  // H^2: (z1, z2) and (|z|, 0) share a radial profile
  const HeisPoint q(2, {0.3, 0.4, -0.2, 0.1, 0.2});
  const HeisPoint rq(2, {std::sqrt(0.3), 0.0, 0.0, 0.0, 0.2});
  EXPECT_NEAR(cc_dist(HeisPoint(2), q), cc_dist(HeisPoint(2), rq), 1e-12);
  const auto c2 = cc_oracle(HeisPoint(2), q, 32, 6, 3);
  EXPECT_LE(std::abs(c2.length - cc_dist(HeisPoint(2), q)) / c2.length, 0.02);
}

TEST(CCOracle, DeterministicForSeed)
{
  const auto p = HeisPoint::h1(0.2, 0.1, 0.4), q = HeisPoint::h1(0.7, 0.3, 0.1);
  EXPECT_EQ(cc_oracle(p, q, 16, 4, 9).length, cc_oracle(p, q, 16, 4, 9).length);
}

TEST(Eikonal, UnitGradientOffCenter)
{
  EXPECT_NEAR(eikonal_check(HeisPoint(1), HeisPoint::h1(1, 0, 0), 1e-4), 1.0, 1e-3);
  EXPECT_NEAR(eikonal_check(HeisPoint(1), HeisPoint::h1(0.3, -0.7, 0.2), 1e-4), 1.0, 1e-3);
  const auto q = HeisPoint::h1(0.5, 0.5, -1.0);
  EXPECT_NEAR(eikonal_check(q, group_mul(q, HeisPoint::h1(0.2, 0.1, 0.9)), 1e-4), 1.0, 1e-3);
  EXPECT_NEAR(eikonal_check(HeisPoint(2), HeisPoint(2, {0.2, 0.1, -0.3, 0.4, 0.5}), 1e-4), 1.0, 1e-3);
}

TEST(Eikonal, RefusesCenterCoset)
{
  EXPECT_THROW(eikonal_check(HeisPoint(1), HeisPoint::h1(0, 0, 1), 1e-4), DomainError);
  EXPECT_THROW(eikonal_check(HeisPoint(1), HeisPoint::h1(5e-4, 0, 1), 1e-4), DomainError);
  const auto q = HeisPoint::h1(0.5, 0.5, -1.0);
  EXPECT_THROW(eikonal_check(q, group_mul(q, HeisPoint::h1(0, 0, 2)), 1e-4), DomainError);
  EXPECT_THROW(eikonal_check(HeisPoint(1), HeisPoint::h1(1, 0, 0), 0), DomainError);
}

TEST(Comparability, FiniteAndStableUnderDoubling)
{
  const auto a = comparability_scan(ScanBox::unit(1), 10000, 1);
  const auto b = comparability_scan(ScanBox::unit(1), 20000, 2);
  EXPECT_EQ(a.pairs, 10000);
  for (double v : {a.c_low, a.c_high, b.c_low, b.c_high}) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(v, 0);
  }
  EXPECT_NEAR(b.c_low / a.c_low, 1.0, 0.1);
  EXPECT_NEAR(b.c_high / a.c_high, 1.0, 0.1);
  EXPECT_EQ(a.c_root, std::max(a.c_low, a.c_high));
  EXPECT_GE(a.koranyi_min, 1.0 - 1e-12);
  EXPECT_LE(a.koranyi_max, std::sqrt(std::numbers::pi) + 1e-12);
}

TEST(Comparability, DegeneratePairsSkipped)
{
  const ScanBox point{{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}};
  const auto r = comparability_scan(point, 10);
  EXPECT_EQ(r.pairs, 0);
  EXPECT_THROW(comparability_scan(ScanBox::unit(1), 1), DomainError);
}

TEST(Comparability, HorizontalLinePairsHaveUnitRatio)
{
  // pairs in C x {0} through o: d_cc = |p - q|
  std::mt19937_64 rng(26);
  std::normal_distribution<double> g;
  for (int i = 0; i < 100; ++i) {
    const double a = g(rng), b = g(rng), s = g(rng);
    const HeisPoint p = HeisPoint::h1(a, b, 0);
    const HeisPoint q = HeisPoint::h1(s * a, s * b, 0);
    const double e = std::hypot(a - s * a, b - s * b);
    if (e == 0) { continue; }
    EXPECT_NEAR(cc_dist(p, q) / e, 1.0, 1e-12);
  }
}
