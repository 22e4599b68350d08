#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace geokit {

enum class Codomain { euclidean, heisenberg };

std::string to_string(Codomain c);
Codomain codomain_from_string(const std::string & s);

/**
 * @brief A map sampled at the nodes of a regular lattice in R^m.
 *
 * Node (i_1, ..., i_m) sits at origin + h * (i_1, ..., i_m), 0 <= i_a < extent_a.
 * Nodes outside the domain (outside the ball, inside the puncture) carry no value.
 */
class GridMap
{
public:
  using Sampler = std::function<std::vector<double>(std::span<const double>)>;

  /// Box [lo, hi] with nodes at lo + i h; hi - lo must be a multiple of h.
  static GridMap sample_box(std::vector<double> lo, std::vector<double> hi, double h, int k, Codomain codomain,
                            const Sampler & f);

  /// Ball of the given radius about 0 with the open ball of radius `exclusion` removed.
  static GridMap sample_ball(int m, double radius, double exclusion, double h, int k, Codomain codomain,
                             const Sampler & f);

  /// Empty grid (no node present); fill with set_value().
  GridMap(int m, int k, double h, double exclusion, Codomain codomain, std::vector<double> origin,
          std::vector<int> extent, bool box);

  int m() const noexcept { return m_; }
  int k() const noexcept { return k_; }
  double h() const noexcept { return h_; }
  double exclusion_radius() const noexcept { return exclusion_; }
  Codomain codomain() const noexcept { return codomain_; }
  bool is_box() const noexcept { return box_; }
  const std::vector<double> & origin() const noexcept { return origin_; }
  const std::vector<int> & extent() const noexcept { return extent_; }

  std::size_t node_count() const noexcept { return present_.size(); }
  std::size_t present_count() const noexcept;

  bool present(std::size_t node) const { return present_[node] != 0; }
  std::span<const double> value(std::size_t node) const;
  void set_value(std::size_t node, std::span<const double> v);

  std::vector<int> multi_index(std::size_t node) const;
  std::size_t linear_index(std::span<const int> idx) const;
  std::vector<double> position(std::size_t node) const;
  double radius(std::size_t node) const;

  /// Quadrature weight of a node: h^m, halved per box face the node lies on.
  double weight(std::size_t node) const;

  /// Partial derivative along `axis`: central when both neighbours are present,
  /// one-sided when only one is, zero for an isolated node.
  std::vector<double> partial(std::size_t node, int axis) const;

private:
  int m_;
  int k_;
  double h_;
  double exclusion_;
  Codomain codomain_;
  bool box_ = true;
  std::vector<double> origin_;
  std::vector<int> extent_;
  std::vector<std::size_t> stride_;
  std::vector<double> values_;
  std::vector<std::uint8_t> present_;
};

}  // namespace geokit
