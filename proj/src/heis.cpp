#include "geokit/heis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geokit/error.hpp"

namespace geokit {

namespace {

void require_same_n(const HeisPoint & p, const HeisPoint & q)
{
  if (p.n() != q.n()) {
    throw DomainError("Heisenberg dimension mismatch: H^" + std::to_string(p.n()) + " vs H^"
                      + std::to_string(q.n()));
  }
}

}  // namespace

HeisPoint::HeisPoint(int n) : HeisPoint(n, std::vector<double>(2 * std::max(n, 0) + 1, 0.0)) {}

HeisPoint::HeisPoint(int n, std::vector<double> coords) : n_(n), coords_(std::move(coords))
{
  if (n < 1) { throw DomainError("HeisPoint: n must be positive"); }
  if (coords_.size() != static_cast<std::size_t>(2 * n + 1)) {
    throw DomainError("HeisPoint: expected " + std::to_string(2 * n + 1) + " coordinates, got "
                      + std::to_string(coords_.size()));
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) { throw DomainError("HeisPoint: non-finite coordinate"); }
  }
}

HeisPoint HeisPoint::h1(double x, double y, double t) { return HeisPoint(1, {x, y, t}); }

double HeisPoint::z_norm2() const noexcept
{
  double s = 0;
  for (std::size_t i = 0; i + 1 < coords_.size(); ++i) { s += coords_[i] * coords_[i]; }
  return s;
}

HorizontalVec::HorizontalVec(HeisPoint base, std::vector<double> coeffs)
    : base_(std::move(base)), coeffs_(std::move(coeffs))
{
  if (coeffs_.size() != static_cast<std::size_t>(2 * base_.n())) {
    throw DomainError("HorizontalVec: expected " + std::to_string(2 * base_.n()) + " coefficients");
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) { throw DomainError("HorizontalVec: non-finite coefficient"); }
  }
}

HeisPoint group_mul(const HeisPoint & p, const HeisPoint & q)
{
  require_same_n(p, q);
  const int n = p.n();
  std::vector<double> out(p.dim());
  // Im(z_j conj(z'_j)) = y_j x'_j - x_j y'_j
  double twist = 0;
  for (int j = 0; j < n; ++j) {
    out[2 * j]     = p.x(j) + q.x(j);
    out[2 * j + 1] = p.y(j) + q.y(j);
    twist += p.y(j) * q.x(j) - p.x(j) * q.y(j);
  }
  out.back() = p.t() + q.t() + 2.0 * twist;
  return HeisPoint(n, std::move(out));
}

HeisPoint inverse(const HeisPoint & p)
{
  std::vector<double> out(p.coords().begin(), p.coords().end());
  for (double & c : out) { c = -c; }
  return HeisPoint(p.n(), std::move(out));
}

HeisPoint dilate(double r, const HeisPoint & p)
{
  if (!(r > 0) || !std::isfinite(r)) { throw DomainError("dilate: r must be positive"); }
  std::vector<double> out(p.coords().begin(), p.coords().end());
  for (std::size_t i = 0; i + 1 < out.size(); ++i) { out[i] *= r; }
  out.back() *= r * r;
  return HeisPoint(p.n(), std::move(out));
}

double koranyi_norm(const HeisPoint & p)
{
  const double z2 = p.z_norm2();
  return std::pow(z2 * z2 + p.t() * p.t(), 0.25);
}

double koranyi_dist(const HeisPoint & p, const HeisPoint & q)
{
  require_same_n(p, q);
  return koranyi_norm(group_mul(inverse(q), p));
}

bool in_center(const HeisPoint & p, double tol)
{
  if (tol < 0) { throw DomainError("in_center: tol must be nonnegative"); }
  for (std::size_t i = 0; i + 1 < p.dim(); ++i) {
    if (std::abs(p[i]) > tol) { return false; }
  }
  return true;
}

std::vector<double> frame_push(const HorizontalVec & v)
{
  const HeisPoint & b = v.base();
  const auto c        = v.coeffs();
  std::vector<double> w(b.dim(), 0.0);
  double wt = 0;
  for (int j = 0; j < b.n(); ++j) {
    const double a = c[2 * j], bb = c[2 * j + 1];
    w[2 * j]     = a;
    w[2 * j + 1] = bb;
    wt += 2.0 * (b.y(j) * a - b.x(j) * bb);
  }
  w.back() = wt;
  return w;
}

double contact_form(const HeisPoint & p, std::span<const double> w)
{
  if (w.size() != p.dim()) { throw DomainError("contact_form: vector length mismatch"); }
  double s = 0;
  for (int j = 0; j < p.n(); ++j) { s += p.x(j) * w[2 * j + 1] - p.y(j) * w[2 * j]; }
  return w.back() + 2.0 * s;
}

double horizontal_norm(const HorizontalVec & v)
{
  double s = 0;
  for (double c : v.coeffs()) { s += c * c; }
  return std::sqrt(s);
}

HeisPoint flow_horizontal(const HeisPoint & p, std::span<const double> coeffs)
{
  if (coeffs.size() != static_cast<std::size_t>(2 * p.n())) {
    throw DomainError("flow_horizontal: expected 2n coefficients");
  }
  std::vector<double> step(coeffs.begin(), coeffs.end());
  step.push_back(0.0);
  return group_mul(p, HeisPoint(p.n(), std::move(step)));
}

}  // namespace geokit
