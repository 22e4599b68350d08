#pragma once

/**
 * @file
 * @brief Heisenberg group H^n in real coordinates (x1, y1, ..., xn, yn, t).
 *
 * Group law   (z, t) * (z', t') = (z + z', t + t' + 2 Im sum_j z_j conj(z'_j))
 * Frame       X_j = d/dx_j + 2 y_j d/dt,   Y_j = d/dy_j - 2 x_j d/dt
 * Contact     alpha = dt + 2 sum_j (x_j dy_j - y_j dx_j)
 *
 * With these conventions [X_j, Y_j] = -4 T.
 */

#include <cstddef>
#include <span>
#include <vector>

namespace geokit {

/// Point of H^n. Coordinates are validated finite on construction and never change.
class HeisPoint
{
public:
  /// Origin of H^n.
  explicit HeisPoint(int n);

  /// Throws DomainError unless `coords.size() == 2n+1` and every entry is finite.
  HeisPoint(int n, std::vector<double> coords);

  /// Shorthand for H^1.
  static HeisPoint h1(double x, double y, double t);

  int n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return coords_.size(); }

  double x(int j) const { return coords_[2 * j]; }
  double y(int j) const { return coords_[2 * j + 1]; }
  double t() const { return coords_.back(); }

  /// Squared Euclidean norm of the horizontal part z.
  double z_norm2() const noexcept;

  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  bool operator==(const HeisPoint &) const = default;

private:
  int n_;
  std::vector<double> coords_;
};

/// Horizontal tangent vector at `base`, stored by its coefficients in {X_j, Y_j}.
class HorizontalVec
{
public:
  HorizontalVec(HeisPoint base, std::vector<double> coeffs);

  int n() const noexcept { return base_.n(); }
  const HeisPoint & base() const noexcept { return base_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

private:
  HeisPoint base_;
  std::vector<double> coeffs_;
};

HeisPoint group_mul(const HeisPoint & p, const HeisPoint & q);
HeisPoint inverse(const HeisPoint & p);
HeisPoint dilate(double r, const HeisPoint & p);

/// Homogeneous gauge (|z|^4 + t^2)^{1/4}.
double koranyi_norm(const HeisPoint & p);

/// d_K(p, q) = || q^{-1} * p ||_K.
double koranyi_dist(const HeisPoint & p, const HeisPoint & q);

/// True iff every horizontal coordinate has magnitude <= tol.
bool in_center(const HeisPoint & p, double tol);

/// Ambient (2n+1)-vector sum_j a_j X_j(base) + b_j Y_j(base).
std::vector<double> frame_push(const HorizontalVec & v);

/// alpha_p(w) for an ambient vector w of length 2n+1.
double contact_form(const HeisPoint & p, std::span<const double> w);

double horizontal_norm(const HorizontalVec & v);

/// Right translation by exp(sum a_j X_j + b_j Y_j): the point reached from p by
/// following the left-invariant field with constant coefficients for unit time.
HeisPoint flow_horizontal(const HeisPoint & p, std::span<const double> coeffs);

}  // namespace geokit
