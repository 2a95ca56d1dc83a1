#pragma once

#include <cstdint>
#include <vector>

#include "diagperc/lattice.hpp"

namespace diagperc {

enum class Axis : std::uint8_t { LeftRight, TopBottom };

/// Which edges the cluster search may use. SquareOnly drops every diagonal;
/// it exists so tests can check that the duality detector notices a broken
/// adjacency.
enum class Adjacency : std::uint8_t { Triangulated, SquareOnly };

/// Disjoint sets with path compression and union by size. Ties in size go
/// to the smaller index so labelings are reproducible.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);

  std::size_t find(std::size_t i);
  /// Returns true if the two sets were distinct.
  bool unite(std::size_t a, std::size_t b);
  std::size_t set_size(std::size_t i) { return size_[find(i)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Clusters of one color. Each cluster is named by its smallest member in
/// row-major site order; sites of the other color carry kNone.
class ClusterLabeling {
 public:
  static constexpr std::int64_t kNone = -1;

  ClusterLabeling(RectDomain d, Color c, std::vector<std::int64_t> labels)
      : domain_(d), color_(c), labels_(std::move(labels)) {}

  const RectDomain& domain() const { return domain_; }
  Color color() const { return color_; }
  std::int64_t id(SiteCoord s) const { return labels_[domain_.index(s)]; }
  bool connected(SiteCoord a, SiteCoord b) const {
    const auto ia = id(a);
    return ia != kNone && ia == id(b);
  }
  const std::vector<std::int64_t>& labels() const { return labels_; }
  std::size_t cluster_count() const;

 private:
  RectDomain domain_;
  Color color_;
  std::vector<std::int64_t> labels_;
};

ClusterLabeling build_clusters(const DiagonalConfig& omega, const ColorConfig& sigma, const RectDomain& d,
                               Color c, Adjacency adj = Adjacency::Triangulated);

/// A monochromatic path inside d joining the two arcs of the axis. A corner
/// site lies on two arcs.
bool has_crossing(const DiagonalConfig& omega, const ColorConfig& sigma, const RectDomain& d, Color c,
                  Axis a, Adjacency adj = Adjacency::Triangulated);

/// (red left-right crossing) XOR (blue top-bottom crossing). Always true on
/// a triangulated rectangle.
bool check_duality(const DiagonalConfig& omega, const ColorConfig& sigma, const RectDomain& d,
                   Adjacency adj = Adjacency::Triangulated);

/// Closed region between a 6n x 6n outer square of cells and the co-centred
/// 4n x 4n inner square. `origin` is the south-west site of the outer square.
struct Annulus {
  SiteCoord origin;
  int n = 1;

  int outer_side() const { return 6 * n; }
  int inner_side() const { return 4 * n; }
  SiteCoord inner_origin() const { return {origin.x + n, origin.y + n}; }

  /// Site on the closed annulus (outer square minus the open inner square).
  bool contains(SiteCoord s) const;
  bool contains(CellCoord c) const;
  bool on_inner_boundary(SiteCoord s) const;
  bool on_outer_boundary(SiteCoord s) const;
};

/// Annulus centred in a 6n x 6n domain.
Annulus centered_annulus(int n);

/// A path of color c inside the annulus from its inner to its outer boundary.
bool has_radial_path(const DiagonalConfig& omega, const ColorConfig& sigma, const Annulus& ann, Color c);

/// A cycle of color c in the closed annulus that surrounds the inner square.
/// Decided as the absence of a radial path of the opposite color.
bool has_circuit(const DiagonalConfig& omega, const ColorConfig& sigma, const Annulus& ann, Color c);

}  // namespace diagperc
