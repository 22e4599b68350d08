#pragma once

/**
 * @file
 * @brief Discrete checks for H^n-valued Sobolev maps: cavitation compositions,
 * horizontal energy, the contact equation, winding numbers, a Stokes pullback
 * identity on the disk and the rank bound for horizontal maps.
 */

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "geokit/curves.hpp"
#include "geokit/embeddings.hpp"
#include "geokit/grid_map.hpp"

namespace geokit {

/// u0(x) = x / |x|.
std::vector<double> cavitation(std::span<const double> x);

/// f = psi o u0 on the unit ball of R^{n+1} punctured at radius eps.
/// Throws DomainError if eps < 2h.
GridMap compose_on_grid(const SphereMap & psi, int n, double h, double eps);

/// Splits an ambient derivative w at the point p of H^n into frame coefficients
/// (a_j = w_{x_j}, b_j = w_{y_j}) and the vertical defect alpha_p(w).
struct FrameSplit
{
  std::vector<double> horizontal;
  double vertical = 0;
};
FrameSplit split_frame(std::span<const double> p, std::span<const double> w);

/// max over nodes and directions k of |dt/du_k - 2 sum_j (y_j dx_j/du_k - x_j dy_j/du_k)|.
double contact_residual(const GridMap & f);

/// Same, each term divided by the Euclidean size of d f / du_k (scale-free).
double contact_residual_relative(const GridMap & f);

/// |grad f|_H at every node; NaN where the grid has no value.
std::vector<double> horizontal_gradient_norms(const GridMap & f);

/// sum_nodes |grad f|_H^p * weight. Throws DomainError when the relative contact
/// residual exceeds `contact_tol`.
double horizontal_energy(const GridMap & f, double p, double contact_tol = 1e-2);

/// Energies of the shells radii[i+1] <= |x| < radii[i] (radii strictly decreasing).
std::vector<double> annular_energies(const GridMap & f, double p, std::span<const double> radii,
                                     double contact_tol = 1e-2);

/// Energy over nodes with |x| >= eps.
double energy_outside(const GridMap & f, double p, double eps, double contact_tol = 1e-2);

/// Winding number of a closed planar curve about `point`. Throws DomainError if
/// the point is on the curve or the angle sum is not within 0.01 of an integer.
int winding_number(const SampledCurve & curve, std::span<const double> point);

/// Polynomial in l real variables.
struct Polynomial
{
  struct Term
  {
    double coeff = 0;
    std::vector<int> powers;
  };
  std::vector<Term> terms;

  double operator()(std::span<const double> y) const;
  Polynomial derivative(int var) const;
};

/// omega = sum_i coeffs[i](y) dy_i on R^l.
struct OneForm
{
  std::vector<Polynomial> coeffs;

  int dim() const noexcept { return static_cast<int>(coeffs.size()); }
  /// Value at y applied to the vector v.
  double apply(std::span<const double> y, std::span<const double> v) const;
};

struct StokesResult
{
  double boundary = 0;  ///< closed-loop integral of g^* omega over the unit circle
  double interior = 0;  ///< integral of g^* (d omega) over the unit disk
};

using PlaneMap = std::function<std::vector<double>(std::span<const double>)>;

/// Boundary term by the trapezoid rule on a polygon with about 2 pi / h vertices;
/// interior term by the midpoint rule on the grid cells of size h, each weighted
/// by the exact area of its intersection with the disk.
StokesResult stokes_check(const PlaneMap & g, int l, const OneForm & omega, double h);

struct RankReport
{
  int max_rank = 0;
  /// max over points of sigma_i / sigma_1, i = 1..min(m, k)
  std::vector<double> max_ratio;
};

using EuclideanMap = std::function<std::vector<double>(std::span<const double>)>;

/// Numerical Jacobian rank (central differences, step `step`) at each point; rank
/// counts singular values above tol * sigma_1.
RankReport rank_check(const EuclideanMap & f, const std::vector<std::vector<double>> & points, double tol,
                      double step = 1e-5);

/// Area of the axis-aligned rectangle [x0, x1] x [y0, y1] intersected with the unit disk.
double rect_disk_area(double x0, double x1, double y0, double y1);

}  // namespace geokit
