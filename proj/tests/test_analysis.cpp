#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "geokit/analysis.hpp"
#include "geokit/error.hpp"

using namespace geokit;

namespace {

constexpr double kPi = std::numbers::pi;

SampledCurve circle(double cx, double cy, double r, int segments, int turns = 1, bool reverse = false)
{
  std::vector<double> s;
  std::vector<std::vector<double>> pts;
  for (int i = 0; i <= segments; ++i) {
    double th = 2 * kPi * turns * i / segments;
    if (reverse) { th = -th; }
    s.push_back(i);
    pts.push_back(i == segments ? std::vector<double>{cx + r, cy}
                                : std::vector<double>{cx + r * std::cos(th), cy + r * std::sin(th)});
  }
  return SampledCurve(std::move(s), std::move(pts), true);
}

// Brute-force area of [x0,x1] x [y0,y1] inside the unit disk (midpoint rule in x).
double rect_disk_area_quadrature(double x0, double x1, double y0, double y1)
{
  const int n = 200000;
  double a    = 0;
  for (int i = 0; i < n; ++i) {
    const double x = x0 + (x1 - x0) * (i + 0.5) / n;
    if (std::abs(x) >= 1) { continue; }
    const double s = std::sqrt(1 - x * x);
    a += std::max(0.0, std::min(y1, s) - std::max(y0, -s));
  }
  return a * (x1 - x0) / n;
}

std::vector<double> to_vec(const HeisPoint & p) { return {p.coords().begin(), p.coords().end()}; }

}  // namespace

TEST(Cavitation, Values)
{
  const std::vector<double> x{3, 4};
  EXPECT_EQ(cavitation(x), (std::vector<double>{0.6, 0.8}));
  std::mt19937_64 rng(51);
  std::normal_distribution<double> g;
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> v{g(rng), g(rng), g(rng)};
    const auto u = cavitation(v);
    EXPECT_NEAR(std::hypot(u[0], u[1], u[2]), 1.0, 1e-15);
    const std::vector<double> w{2.5 * v[0], 2.5 * v[1], 2.5 * v[2]};
    const auto uw = cavitation(w);
    for (int k = 0; k < 3; ++k) { EXPECT_NEAR(uw[k], u[k], 1e-15); }
  }
  const std::vector<double> zero{0, 0};
  EXPECT_THROW(cavitation(zero), DomainError);
}

TEST(ComposeOnGrid, RadialAndInImage)
{
  const double h = 1.0 / 32;
  EXPECT_THROW(compose_on_grid(legendrian_map(), 1, h, 1.5 * h), DomainError);
  const auto g = compose_on_grid(legendrian_map(), 1, h, 4 * h);
  EXPECT_EQ(g.m(), 2);
  EXPECT_EQ(g.k(), 3);
  EXPECT_EQ(g.codomain(), Codomain::heisenberg);

  double tmin = 10, tmax = -10;
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const double r = g.radius(node);
    EXPECT_EQ(g.present(node), r >= 4 * h && r <= 1 + 1e-12) << node;
    if (!g.present(node)) { continue; }
    const auto v = g.value(node);
    const auto direct = to_vec(legendrian_F(SpherePoint::normalized(g.position(node))));
    for (int c = 0; c < 3; ++c) { EXPECT_NEAR(v[c], direct[c], 1e-9); }
    tmin = std::min(tmin, v[2]);
    tmax = std::max(tmax, v[2]);

    // same ray, twice the radius
    const auto idx = g.multi_index(node);
    const int half = (g.extent()[0] - 1) / 2;
    const std::vector<int> far{half + 2 * (idx[0] - half), half + 2 * (idx[1] - half)};
    if (far[0] >= 0 && far[0] < g.extent()[0] && far[1] >= 0 && far[1] < g.extent()[1]) {
      const std::size_t f = g.linear_index(far);
      if (g.present(f)) {
        for (int c = 0; c < 3; ++c) { EXPECT_NEAR(g.value(f)[c], v[c], 1e-14); }
      }
    }
  }
  EXPECT_GE(tmin, -4.0 / 3.0 - 1e-12);
  EXPECT_LE(tmax, 4.0 / 3.0 + 1e-12);
}

TEST(SplitFrame, MatchesContactForm)
{
  const std::vector<double> p{1, 0, 0}, w{0.2, 1, 0.5};
  const auto s = split_frame(p, w);
  EXPECT_EQ(s.horizontal, (std::vector<double>{0.2, 1}));
  EXPECT_DOUBLE_EQ(s.vertical, contact_form(HeisPoint(1, p), w));
  const std::vector<double> bad{1, 0};
  EXPECT_THROW(split_frame(bad, bad), DomainError);
}

TEST(HorizontalEnergy, ConstantAndUnitSpeedMaps)
{
  const auto constant = GridMap::sample_box({0, 0}, {1, 1}, 0.125, 3, Codomain::heisenberg,
                                            [](std::span<const double>) { return std::vector<double>{0.3, -0.1, 2.0}; });
  EXPECT_EQ(horizontal_energy(constant, 1.5), 0.0);
  EXPECT_EQ(contact_residual(constant), 0.0);

  const auto line = GridMap::sample_box({0, 0}, {1, 1}, 0.125, 3, Codomain::heisenberg,
                                        [](std::span<const double> u) { return std::vector<double>{u[0], 0.0, 0.0}; });
  for (double p : {1.0, 1.5, 2.0, 3.0}) { EXPECT_NEAR(horizontal_energy(line, p), 1.0, 1e-14); }

  const auto euclid = GridMap::sample_box({0, 0}, {1, 1}, 0.125, 3, Codomain::euclidean,
                                          [](std::span<const double> u) { return std::vector<double>{u[0], 0.0, 0.0}; });
  EXPECT_THROW(horizontal_energy(euclid, 2), DomainError);
  EXPECT_THROW(horizontal_energy(line, 0.5), DomainError);
}

TEST(HorizontalEnergy, RejectsNonHorizontalMaps)
{
  const auto vertical = GridMap::sample_box({0, 0}, {1, 1}, 0.125, 3, Codomain::heisenberg,
                                            [](std::span<const double> u) { return std::vector<double>{0.0, 0.0, u[0]}; });
  EXPECT_DOUBLE_EQ(contact_residual(vertical), 1.0);
  EXPECT_THROW(horizontal_energy(vertical, 2), DomainError);
}

TEST(HorizontalEnergy, EqualsEuclideanEnergyOfProjection)
{
  // Horizontal curve composed with a scalar function of both coordinates.
  const auto g = GridMap::sample_box({-1, 0.5}, {1, 1.5}, 1.0 / 64, 3, Codomain::heisenberg,
                                     [](std::span<const double> u) {
                                       const std::vector<double> x{u[0] + 0.3 * u[1] * u[1] + 0.2 * u[0] * u[1]};
                                       return to_vec(cayley_phi(x));
                                     });
  EXPECT_LE(contact_residual_relative(g), 1e-2);
  for (double p : {1.0, 1.5, 2.0}) {
    double ref = 0;
    for (std::size_t node = 0; node < g.node_count(); ++node) {
      double s2 = 0;
      for (int a = 0; a < 2; ++a) {
        const auto d = g.partial(node, a);
        s2 += d[0] * d[0] + d[1] * d[1];
      }
      ref += std::pow(std::sqrt(s2), p) * g.weight(node);
    }
    EXPECT_NEAR(horizontal_energy(g, p) / ref, 1.0, 1e-12);
  }
}

TEST(ContactResidual, ConvergesUnderRefinement)
{
  double prev = contact_residual(compose_on_grid(legendrian_map(), 1, 1.0 / 16, 0.25));
  for (int k = 5; k <= 7; ++k) {
    const double cur = contact_residual(compose_on_grid(legendrian_map(), 1, std::ldexp(1.0, -k), 0.25));
    EXPECT_LT(cur, 0.6 * prev) << "h = 2^-" << k;
    prev = cur;
  }
}

TEST(ContactResidual, LeftTranslationInvariant)
{
  const auto f = compose_on_grid(legendrian_map(), 1, 1.0 / 32, 0.25);
  const HeisPoint g = HeisPoint::h1(0.7, -1.3, 2.0);
  GridMap moved(f.m(), f.k(), f.h(), f.exclusion_radius(), f.codomain(), f.origin(), f.extent(), f.is_box());
  for (std::size_t node = 0; node < f.node_count(); ++node) {
    if (!f.present(node)) { continue; }
    const auto v = f.value(node);
    moved.set_value(node, to_vec(group_mul(g, HeisPoint(1, {v.begin(), v.end()}))));
  }
  EXPECT_NEAR(contact_residual(moved), contact_residual(f), 1e-12);
  EXPECT_NEAR(horizontal_energy(moved, 1.5, 0.1), horizontal_energy(f, 1.5, 0.1), 1e-10);
}

TEST(Energy, DyadicScalingOfCavitationComposition)
{
  const auto f = compose_on_grid(legendrian_map(), 1, 1.0 / 256, 1.0 / 64);
  const std::vector<double> radii{1 + 1e-9, 0.5, 0.25, 0.125, 0.0625};

  // p = 1.5: |grad f| ~ 1/r, so shell energy scales by 2^{-(2 - p)}
  const auto e15 = annular_energies(f, 1.5, radii, 0.1);
  for (std::size_t i = 0; i + 1 < e15.size(); ++i) { EXPECT_NEAR(e15[i + 1] / e15[i], std::sqrt(0.5), 0.1 * std::sqrt(0.5)); }

  // p = 2: every shell carries int_0^{2 pi} |F_theta|^2 dtheta * ln 2 = 2 pi ln 2
  const auto e2 = annular_energies(f, 2, radii, 0.1);
  for (double e : e2) { EXPECT_NEAR(e, 2 * kPi * std::log(2.0), 0.05); }

  EXPECT_NEAR(energy_outside(f, 2, 0.25, 0.1), e2[0] + e2[1], 1e-9);
  const std::vector<double> bad{0.5, 1.0};
  EXPECT_THROW(annular_energies(f, 2, bad, 0.1), DomainError);
}

TEST(Energy, IndependentOfThreadCount)
{
  const auto f = compose_on_grid(legendrian_map(), 1, 1.0 / 128, 1.0 / 16);
  setenv("GEOKIT_THREADS", "1", 1);
  const double one = horizontal_energy(f, 1.5, 0.1);
  setenv("GEOKIT_THREADS", "4", 1);
  const double four = horizontal_energy(f, 1.5, 0.1);
  unsetenv("GEOKIT_THREADS");
  EXPECT_EQ(one, four);
}

TEST(Winding, CanonicalCurves)
{
  const std::vector<double> o{0, 0}, far{2, 0};
  EXPECT_EQ(winding_number(circle(0, 0, 1, 100), o), 1);
  EXPECT_EQ(winding_number(circle(0, 0, 1, 100), far), 0);
  EXPECT_EQ(winding_number(circle(0, 0, 1, 100, 2), o), 2);
  EXPECT_EQ(winding_number(circle(0, 0, 1, 100, 1, true), o), -1);
  for (int refine : {10, 100}) {
    EXPECT_EQ(winding_number(circle(0, 0, 1, 100 * refine), o), 1);
    EXPECT_EQ(winding_number(circle(0, 0, 1, 100 * refine), far), 0);
    EXPECT_EQ(winding_number(circle(0, 0, 1, 100 * refine, 2), o), 2);
  }
}

TEST(Winding, Errors)
{
  const std::vector<double> on{1, 0};
  EXPECT_THROW(winding_number(circle(0, 0, 1, 100), on), DomainError);
  const auto open = SampledCurve::uniform({{1, 0}, {0, 1}, {-1, 0}});
  const std::vector<double> o{0, 0};
  EXPECT_THROW(winding_number(open, o), DomainError);
}

TEST(Winding, ReparametrizationInvariant)
{
  // Nonuniform sampling of an ellipse around an off-center point.
  std::vector<double> s;
  std::vector<std::vector<double>> pts;
  const int n = 700;
  for (int i = 0; i <= n; ++i) {
    const double u  = static_cast<double>(i) / n;
    const double th = 2 * kPi * (u + 0.1 * std::sin(2 * kPi * u));
    s.push_back(u);
    pts.push_back(i == n ? std::vector<double>{3.0, 0.0} : std::vector<double>{3 * std::cos(th), std::sin(th)});
  }
  const std::vector<double> p{2.5, 0.1};
  EXPECT_EQ(winding_number(SampledCurve(s, pts, true), p), 1);
}

TEST(Polynomial, EvaluateAndDifferentiate)
{
  // 3 x^2 y - y + 2
  const Polynomial q{{{3.0, {2, 1}}, {-1.0, {0, 1}}, {2.0, {0, 0}}}};
  const std::vector<double> y{2, -1};
  EXPECT_DOUBLE_EQ(q(y), -12 + 1 + 2);
  EXPECT_DOUBLE_EQ(q.derivative(0)(y), 6 * 2 * -1);
  EXPECT_DOUBLE_EQ(q.derivative(1)(y), 3 * 4 - 1);
  const OneForm omega{{q, Polynomial{}}};
  const std::vector<double> v{1, 5};
  EXPECT_DOUBLE_EQ(omega.apply(y, v), q(y));
}

TEST(RectDiskArea, MatchesQuadrature)
{
  EXPECT_NEAR(rect_disk_area(-2, 2, -2, 2), kPi, 1e-15);
  EXPECT_NEAR(rect_disk_area(0, 1, 0, 1), kPi / 4, 1e-15);
  EXPECT_EQ(rect_disk_area(1, 2, 0, 1), 0.0);
  EXPECT_NEAR(rect_disk_area(-0.1, 0.1, -0.1, 0.1), 0.04, 1e-15);
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int i = 0; i < 20; ++i) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a > b) { std::swap(a, b); }
    if (c > d) { std::swap(c, d); }
    EXPECT_NEAR(rect_disk_area(a, b, c, d), rect_disk_area_quadrature(a, b, c, d), 1e-6);
  }
}

TEST(Stokes, IdentityRadialAndClosed)
{
  const Polynomial x{{{1.0, {1, 0}}}}, y{{{1.0, {0, 1}}}};
  const OneForm x_dy{{Polynomial{}, x}};
  const PlaneMap id = [](std::span<const double> u) { return std::vector<double>(u.begin(), u.end()); };
  const PlaneMap radial = [](std::span<const double> u) {
    const double r = std::hypot(u[0], u[1]);
    return std::vector<double>{r * u[0], r * u[1]};
  };

  const auto a = stokes_check(id, 2, x_dy, 1e-2);
  EXPECT_NEAR(a.boundary, kPi, 1e-3);
  EXPECT_NEAR(a.interior, kPi, 1e-3);

  const auto b = stokes_check(radial, 2, x_dy, 1e-2);
  EXPECT_NEAR(b.boundary, kPi, 1e-2);
  EXPECT_NEAR(b.interior, kPi, 1e-2);

  // x dx + y dy is exact: both sides vanish for any g
  const OneForm closed{{x, y}};
  const PlaneMap bent = [](std::span<const double> u) {
    return std::vector<double>{u[0] + 0.3 * u[1] * u[1], u[1] + 0.2 * u[0] * u[1]};
  };
  const auto c = stokes_check(bent, 2, closed, 1e-2);
  EXPECT_NEAR(c.boundary, 0.0, 1e-12);
  EXPECT_EQ(c.interior, 0.0);

  EXPECT_THROW(stokes_check(id, 3, x_dy, 1e-2), DomainError);
}

TEST(Stokes, GapClosesAtFirstOrder)
{
  const Polynomial x{{{1.0, {1, 0}}}}, y{{{1.0, {0, 1}}}};
  // omega = x^2 y dy on R^3 pulled back by a bent map into R^3
  const Polynomial x2y{{{1.0, {2, 1, 0}}}};
  const Polynomial z{{{1.0, {0, 0, 1}}}};
  const OneForm omega{{Polynomial{}, x2y, z}};
  const PlaneMap g = [](std::span<const double> u) {
    return std::vector<double>{u[0] + 0.25 * u[1] * u[1], u[1] - 0.1 * u[0], std::hypot(u[0], u[1])};
  };
  double prev = 0;
  for (double h : {0.04, 0.02, 0.01}) {
    const auto s   = stokes_check(g, 3, omega, h);
    const double gap = std::abs(s.boundary - s.interior);
    if (prev > 0) { EXPECT_GE(std::log2(prev / gap), 0.9) << "h " << h; }
    prev = gap;
  }
  (void)y;
}

TEST(Rank, HorizontalMapsHaveRankAtMostN)
{
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<std::vector<double>> pts;
  while (pts.size() < 200) {
    std::vector<double> v{u(rng), u(rng), u(rng)};
    const double r = std::hypot(v[0], v[1], v[2]);
    if (r > 0.25 && r < 1) { pts.push_back(v); }
  }
  const auto psi = legendrian_map();
  const EuclideanMap f = [&psi](std::span<const double> v) { return psi(SpherePoint::normalized(cavitation(v))); };
  const auto r = rank_check(f, pts, 1e-6);
  EXPECT_EQ(r.max_rank, 2);
  ASSERT_EQ(r.max_ratio.size(), 3u);
  EXPECT_LT(r.max_ratio[2], 1e-6);

  // a non-horizontal generic map of the same shape has full rank
  const EuclideanMap generic = [](std::span<const double> v) {
    return std::vector<double>{v[0], v[1] * v[0], v[2], v[0] * v[2], v[1]};
  };
  EXPECT_EQ(rank_check(generic, pts, 1e-6).max_rank, 3);

  const EuclideanMap constant = [](std::span<const double>) { return std::vector<double>{1, 2, 3}; };
  EXPECT_EQ(rank_check(constant, pts, 1e-6).max_rank, 0);

  std::vector<std::vector<double>> line_pts;
  for (int i = 0; i < 50; ++i) { line_pts.push_back({u(rng) * 3}); }
  const EuclideanMap cay = [](std::span<const double> v) { return to_vec(cayley_phi(v)); };
  EXPECT_LE(rank_check(cay, line_pts, 1e-6).max_rank, 1);
}
