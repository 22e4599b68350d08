#include "geokit/grid_map.hpp"

#include <cmath>

#include "geokit/error.hpp"

namespace geokit {

std::string to_string(Codomain c) { return c == Codomain::heisenberg ? "heisenberg" : "euclidean"; }

Codomain codomain_from_string(const std::string & s)
{
  if (s == "heisenberg") { return Codomain::heisenberg; }
  if (s == "euclidean") { return Codomain::euclidean; }
  throw DomainError("unknown codomain '" + s + "'");
}

GridMap::GridMap(int m, int k, double h, double exclusion, Codomain codomain, std::vector<double> origin,
                 std::vector<int> extent, bool box)
    : m_(m), k_(k), h_(h), exclusion_(exclusion), codomain_(codomain), box_(box), origin_(std::move(origin)),
      extent_(std::move(extent))
{
  if (m_ < 1 || k_ < 1) { throw DomainError("GridMap: m and k must be positive"); }
  if (!(h_ > 0) || !std::isfinite(h_)) { throw DomainError("GridMap: h must be positive"); }
  if (!(exclusion_ >= 0)) { throw DomainError("GridMap: exclusion radius must be nonnegative"); }
  if (origin_.size() != static_cast<std::size_t>(m_) || extent_.size() != static_cast<std::size_t>(m_)) {
    throw DomainError("GridMap: origin and extent must have m entries");
  }
  if (codomain_ == Codomain::heisenberg && (k_ < 3 || k_ % 2 == 0)) {
    throw DomainError("GridMap: Heisenberg codomain needs k = 2n+1");
  }
  stride_.assign(static_cast<std::size_t>(m_), 1);
  std::size_t total = 1;
  for (int a = m_ - 1; a >= 0; --a) {
    if (extent_[a] < 1) { throw DomainError("GridMap: empty extent"); }
    stride_[a] = total;
    total *= static_cast<std::size_t>(extent_[a]);
  }
  present_.assign(total, 0);
  values_.assign(total * static_cast<std::size_t>(k_), 0.0);
}

GridMap GridMap::sample_box(std::vector<double> lo, std::vector<double> hi, double h, int k, Codomain codomain,
                            const Sampler & f)
{
  if (lo.size() != hi.size() || lo.empty()) { throw DomainError("sample_box: bad bounds"); }
  if (!(h > 0)) { throw DomainError("sample_box: h must be positive"); }
  std::vector<int> extent(lo.size());
  for (std::size_t a = 0; a < lo.size(); ++a) {
    const double cells = (hi[a] - lo[a]) / h;
    const double whole = std::round(cells);
    if (!(whole >= 0) || std::abs(cells - whole) > 1e-9 * std::max(1.0, whole)) {
      throw DomainError("sample_box: box side is not a multiple of h");
    }
    extent[a] = static_cast<int>(whole) + 1;
  }
  const int m = static_cast<int>(lo.size());
  GridMap g(m, k, h, 0.0, codomain, std::move(lo), std::move(extent), true);
  for (std::size_t node = 0; node < g.node_count(); ++node) { g.set_value(node, f(g.position(node))); }
  return g;
}

GridMap GridMap::sample_ball(int m, double radius, double exclusion, double h, int k, Codomain codomain,
                             const Sampler & f)
{
  if (!(radius > 0) || !(h > 0)) { throw DomainError("sample_ball: radius and h must be positive"); }
  if (!(exclusion >= 0) || exclusion >= radius) { throw DomainError("sample_ball: bad exclusion radius"); }
  const int half = static_cast<int>(std::floor(radius / h + 1e-9));
  std::vector<double> origin(static_cast<std::size_t>(m), -half * h);
  std::vector<int> extent(static_cast<std::size_t>(m), 2 * half + 1);
  GridMap g(m, k, h, exclusion, codomain, std::move(origin), std::move(extent), false);

  const double r_hi = radius * (1 + 1e-12);
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const double r = g.radius(node);
    if (r > r_hi || r < exclusion) { continue; }
    g.set_value(node, f(g.position(node)));
  }
  return g;
}

std::size_t GridMap::present_count() const noexcept
{
  std::size_t c = 0;
  for (auto p : present_) { c += p; }
  return c;
}

std::span<const double> GridMap::value(std::size_t node) const
{
  if (!present(node)) { throw DomainError("GridMap: no value at node " + std::to_string(node)); }
  return {values_.data() + node * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
}

void GridMap::set_value(std::size_t node, std::span<const double> v)
{
  if (v.size() != static_cast<std::size_t>(k_)) { throw DomainError("GridMap: value has wrong dimension"); }
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (!std::isfinite(v[c])) { throw DomainError("GridMap: non-finite value"); }
    values_[node * static_cast<std::size_t>(k_) + c] = v[c];
  }
  present_[node] = 1;
}

std::vector<int> GridMap::multi_index(std::size_t node) const
{
  std::vector<int> idx(static_cast<std::size_t>(m_));
  for (int a = 0; a < m_; ++a) {
    idx[a] = static_cast<int>(node / stride_[a]);
    node %= stride_[a];
  }
  return idx;
}

std::size_t GridMap::linear_index(std::span<const int> idx) const
{
  std::size_t node = 0;
  for (int a = 0; a < m_; ++a) {
    if (idx[a] < 0 || idx[a] >= extent_[a]) { throw DomainError("GridMap: index out of range"); }
    node += static_cast<std::size_t>(idx[a]) * stride_[a];
  }
  return node;
}

std::vector<double> GridMap::position(std::size_t node) const
{
  const auto idx = multi_index(node);
  std::vector<double> x(static_cast<std::size_t>(m_));
  for (int a = 0; a < m_; ++a) { x[a] = origin_[a] + h_ * idx[a]; }
  return x;
}

double GridMap::radius(std::size_t node) const
{
  double s = 0;
  for (double c : position(node)) { s += c * c; }
  return std::sqrt(s);
}

double GridMap::weight(std::size_t node) const
{
  double w = std::pow(h_, m_);
  if (!box_) { return w; }
  const auto idx = multi_index(node);
  for (int a = 0; a < m_; ++a) {
    if (extent_[a] > 1 && (idx[a] == 0 || idx[a] == extent_[a] - 1)) { w *= 0.5; }
  }
  return w;
}

std::vector<double> GridMap::partial(std::size_t node, int axis) const
{
  const auto idx   = multi_index(node);
  const std::size_t s = stride_[axis];
  const bool has_lo = idx[axis] > 0 && present(node - s);
  const bool has_hi = idx[axis] + 1 < extent_[axis] && present(node + s);

  std::vector<double> d(static_cast<std::size_t>(k_), 0.0);
  if (!has_lo && !has_hi) { return d; }
  const auto mid = value(node);
  const auto lo  = has_lo ? value(node - s) : mid;
  const auto hi  = has_hi ? value(node + s) : mid;
  const double span = (has_lo && has_hi ? 2.0 : 1.0) * h_;
  for (int c = 0; c < k_; ++c) { d[c] = (hi[c] - lo[c]) / span; }
  return d;
}

}  // namespace geokit
