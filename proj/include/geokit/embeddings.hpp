#pragma once

/**
 * @file
 * @brief Horizontal embeddings of S^n into H^n.
 *
 * Two constructions are provided:
 *
 *  - the complex-hyperbolic one: S^n sits horizontally in the unit sphere of
 *    C^{n+1}; a unitary rotation, the Cayley transform onto the Siegel domain
 *    D = { Im w_{n+1} > sum_j |w_j|^2 } and the projection forgetting Im w_{n+1}
 *    produce cayley_phi() on R^n u {infinity};
 *  - the Legendrian lift of f(x0, x') = (x1, x0 x1, ..., xn, x0 xn), whose
 *    vertical coordinate solves dtau + 2 f^*beta = 0 on the sphere.
 */

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "geokit/heis.hpp"

namespace geokit {

/// Point of the unit sphere S^n in R^{n+1}.
class SpherePoint
{
public:
  /// Throws DomainError unless the coordinates have unit norm within 1e-12.
  explicit SpherePoint(std::vector<double> coords);

  /// Normalizes a nonzero vector onto the sphere.
  static SpherePoint normalized(std::vector<double> v);

  int n() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

private:
  std::vector<double> coords_;
};

/// Great-circle distance.
double sphere_distance(const SpherePoint & p, const SpherePoint & q);

/// Deterministic lattice: equally spaced angles starting at (1, 0) for n = 1, the
/// Fibonacci spiral in the first coordinate for n = 2. Throws for n > 2.
std::vector<SpherePoint> sphere_lattice(int n, int count);

/// Seeded uniform sample (normalized Gaussians); any n >= 1.
std::vector<SpherePoint> sphere_random(int n, int count, std::uint64_t seed);

using ComplexVec = std::vector<std::complex<double>>;

/// C(z) = (z_1/(1+z_{n+1}), ..., z_n/(1+z_{n+1}), i (1-z_{n+1})/(1+z_{n+1})).
/// Throws DomainError at the south pole z_{n+1} = -1 (image at infinity).
ComplexVec cayley_transform(const ComplexVec & z);

/// R(z) = (z_1, ..., z_n, i z_{n+1}), the rotation moving S^n off the south pole.
ComplexVec unit_rotation(const ComplexVec & z);

/// Im w_{n+1} - sum_{j<=n} |w_j|^2; zero on the Siegel boundary.
double siegel_defining_function(const ComplexVec & w);

/// (x_1, y_1, ..., x_n, y_n, Re w_{n+1}) for w within 1e-8 of the Siegel boundary.
HeisPoint siegel_project(const ComplexVec & w);

/// Inverse of siegel_project: restores Im w_{n+1} = |z|^2.
ComplexVec siegel_lift(const HeisPoint & p);

/// The explicit horizontal map R^n -> H^n of the complex-hyperbolic construction.
HeisPoint cayley_phi(std::span<const double> x);

/// Value of cayley_phi at the point at infinity: (0, 1).
HeisPoint cayley_phi_infinity(int n);

/// cayley_phi through the stereographic chart u = x'/(1 - x_{n+1}) of S^n, which
/// sends the pole (0, ..., 0, 1) to infinity.
HeisPoint cayley_on_sphere(const SpherePoint & p);

/// Legendrian lift F(x0, x') = (x1, x0 x1, ..., xn, x0 xn, (2/3) x0^3 - 2 x0).
HeisPoint legendrian_F(const SpherePoint & p);

/// Map from S^n to R^k, usually an H^n point in coordinates.
using SphereMap = std::function<std::vector<double>(const SpherePoint &)>;

SphereMap legendrian_map();
SphereMap cayley_map();

/// Max over `grid` and an orthonormal tangent frame at each grid point of
/// |alpha_{F(p)}(F(q) - F(p))| / mesh, with q at great-circle distance `mesh`.
double pullback_defect(const SphereMap & map, const std::vector<SpherePoint> & grid, double mesh);

enum class TargetMetric { euclidean, koranyi, cc };

struct DistortionReport
{
  double lower = 0;
  double upper = 0;
  std::pair<SpherePoint, SpherePoint> argmin_pair{SpherePoint({1.0, 0.0}), SpherePoint({1.0, 0.0})};
  std::pair<SpherePoint, SpherePoint> argmax_pair{SpherePoint({1.0, 0.0}), SpherePoint({1.0, 0.0})};
  int samples = 0;
};

/// Min and max of d_target(F(p), F(q)) / d_sphere(p, q) over `samples` seeded
/// random pairs of distinct points of S^n.
DistortionReport bilip_estimate(const SphereMap & map, int n, TargetMetric metric, int samples,
                                std::uint64_t seed = 0);

struct SeparationReport
{
  double min_target = 0;  ///< min pairwise d_target(F(p), F(q))
  double min_sphere = 0;  ///< min pairwise great-circle distance
};

/// Pairwise minimum over all pairs of `points` (quadratic cost).
SeparationReport min_pairwise_separation(const SphereMap & map, const std::vector<SpherePoint> & points,
                                         TargetMetric metric);

}  // namespace geokit
