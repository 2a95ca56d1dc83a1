#include "diagperc/connectivity.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace diagperc {

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t i) {
  std::size_t root = i;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[i] != root) {
    const std::size_t next = parent_[i];
    parent_[i] = root;
    i = next;
  }
  return root;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

std::size_t ClusterLabeling::cluster_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < labels_.size(); ++i) n += (labels_[i] == static_cast<std::int64_t>(i));
  return n;
}

namespace {

void require_match(const DiagonalConfig& omega, const ColorConfig& sigma, const RectDomain& d) {
  if (!omega.matches(d) || !sigma.matches(d)) {
    throw DomainError("configuration is " + std::to_string(sigma.cells_w()) + "x" +
                      std::to_string(sigma.cells_h()) + " cells but domain is " + std::to_string(d.cells_w()) +
                      "x" + std::to_string(d.cells_h()));
  }
}

// Union-find over the sites of color c accepted by in_site, using the edges
// whose endpoints are both accepted and, for diagonals, whose cell is
// accepted by in_cell.
template <typename SiteFilter, typename CellFilter>
UnionFind unite_region(const DiagonalConfig& omega, const ColorConfig& sigma, const RectDomain& d, Color c,
                       Adjacency adj, SiteFilter&& in_site, CellFilter&& in_cell) {
  UnionFind uf(d.num_sites());
  for (int y = 0; y <= d.cells_h(); ++y) {
    for (int x = 0; x <= d.cells_w(); ++x) {
      const SiteCoord s{x, y};
      if (sigma.at(s) != c || !in_site(s)) continue;
      const auto is = d.index(s);
      for_each_neighbor(s, d, omega, [&](SiteCoord t) {
        // Each undirected edge is seen from both ends; handle it once.
        if (d.index(t) < is || sigma.at(t) != c || !in_site(t)) return;
        if (t.x != s.x && t.y != s.y) {
          if (adj == Adjacency::SquareOnly) return;
          if (!in_cell(CellCoord{std::min(s.x, t.x), std::min(s.y, t.y)})) return;
        }
        uf.unite(is, d.index(t));
      });
    }
  }
  return uf;
}

}  // namespace

ClusterLabeling build_clusters(const DiagonalConfig& omega, const ColorConfig& sigma, const RectDomain& d,
                               Color c, Adjacency adj) {
  require_match(omega, sigma, d);
  auto all_sites = [](SiteCoord) { return true; };
  auto all_cells = [](CellCoord) { return true; };
  UnionFind uf = unite_region(omega, sigma, d, c, adj, all_sites, all_cells);

  const std::size_t n = d.num_sites();
  std::vector<std::int64_t> root_min(n, ClusterLabeling::kNone);
  std::vector<std::int64_t> labels(n, ClusterLabeling::kNone);
  // Row-major sweep: the first member reached is the smallest one.
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma.at(d.site_at(i)) != c) continue;
    const auto r = uf.find(i);
    if (root_min[r] == ClusterLabeling::kNone) root_min[r] = static_cast<std::int64_t>(i);
    labels[i] = root_min[r];
  }
  return ClusterLabeling(d, c, std::move(labels));
}

bool has_crossing(const DiagonalConfig& omega, const ColorConfig& sigma, const RectDomain& d, Color c, Axis a,
                  Adjacency adj) {
  const ClusterLabeling lab = build_clusters(omega, sigma, d, c, adj);
  std::vector<char> touches_first(d.num_sites(), 0);
  if (a == Axis::LeftRight) {
    for (int y = 0; y <= d.cells_h(); ++y) {
      const auto id = lab.id({0, y});
      if (id != ClusterLabeling::kNone) touches_first[id] = 1;
    }
    for (int y = 0; y <= d.cells_h(); ++y) {
      const auto id = lab.id({d.cells_w(), y});
      if (id != ClusterLabeling::kNone && touches_first[id]) return true;
    }
  } else {
    for (int x = 0; x <= d.cells_w(); ++x) {
      const auto id = lab.id({x, d.cells_h()});
      if (id != ClusterLabeling::kNone) touches_first[id] = 1;
    }
    for (int x = 0; x <= d.cells_w(); ++x) {
      const auto id = lab.id({x, 0});
      if (id != ClusterLabeling::kNone && touches_first[id]) return true;
    }
  }
  return false;
}

bool check_duality(const DiagonalConfig& omega, const ColorConfig& sigma, const RectDomain& d, Adjacency adj) {
  return has_crossing(omega, sigma, d, Color::Red, Axis::LeftRight, adj) !=
         has_crossing(omega, sigma, d, Color::Blue, Axis::TopBottom, adj);
}

bool Annulus::contains(SiteCoord s) const {
  const int ox = origin.x, oy = origin.y, side = outer_side();
  if (s.x < ox || s.y < oy || s.x > ox + side || s.y > oy + side) return false;
  const auto io = inner_origin();
  const bool strictly_inside =
      s.x > io.x && s.x < io.x + inner_side() && s.y > io.y && s.y < io.y + inner_side();
  return !strictly_inside;
}

bool Annulus::contains(CellCoord c) const {
  const int side = outer_side();
  if (c.x < origin.x || c.y < origin.y || c.x >= origin.x + side || c.y >= origin.y + side) return false;
  const auto io = inner_origin();
  const bool inside = c.x >= io.x && c.x < io.x + inner_side() && c.y >= io.y && c.y < io.y + inner_side();
  return !inside;
}

bool Annulus::on_inner_boundary(SiteCoord s) const {
  const auto io = inner_origin();
  const int k = inner_side();
  const bool in_box = s.x >= io.x && s.x <= io.x + k && s.y >= io.y && s.y <= io.y + k;
  return in_box && (s.x == io.x || s.x == io.x + k || s.y == io.y || s.y == io.y + k);
}

bool Annulus::on_outer_boundary(SiteCoord s) const {
  const int k = outer_side();
  const bool in_box = s.x >= origin.x && s.x <= origin.x + k && s.y >= origin.y && s.y <= origin.y + k;
  return in_box && (s.x == origin.x || s.x == origin.x + k || s.y == origin.y || s.y == origin.y + k);
}

Annulus centered_annulus(int n) {
  if (n < 1) throw DomainError("annulus: n must be >= 1");
  return Annulus{{0, 0}, n};
}

namespace {

RectDomain annulus_ambient(const DiagonalConfig& omega, const ColorConfig& sigma, const Annulus& ann) {
  if (ann.n < 1) throw DomainError("annulus: n must be >= 1");
  if (omega.cells_w() != sigma.cells_w() || omega.cells_h() != sigma.cells_h()) {
    throw DomainError("annulus: diagonal and color grids differ in size");
  }
  RectDomain d(sigma.cells_w(), sigma.cells_h());
  const int side = ann.outer_side();
  if (ann.origin.x < 0 || ann.origin.y < 0 || ann.origin.x + side > d.cells_w() ||
      ann.origin.y + side > d.cells_h()) {
    throw DomainError("annulus: outer square does not fit in the configuration");
  }
  return d;
}

}  // namespace

bool has_radial_path(const DiagonalConfig& omega, const ColorConfig& sigma, const Annulus& ann, Color c) {
  const RectDomain d = annulus_ambient(omega, sigma, ann);
  UnionFind uf = unite_region(
      omega, sigma, d, c, Adjacency::Triangulated, [&](SiteCoord s) { return ann.contains(s); },
      [&](CellCoord cell) { return ann.contains(cell); });

  std::vector<char> touches_inner(d.num_sites(), 0);
  const auto io = ann.inner_origin();
  const int k = ann.inner_side();
  for (int y = io.y; y <= io.y + k; ++y) {
    for (int x = io.x; x <= io.x + k; ++x) {
      const SiteCoord s{x, y};
      if (ann.on_inner_boundary(s) && sigma.at(s) == c) touches_inner[uf.find(d.index(s))] = 1;
    }
  }
  const int side = ann.outer_side();
  for (int y = ann.origin.y; y <= ann.origin.y + side; ++y) {
    for (int x = ann.origin.x; x <= ann.origin.x + side; ++x) {
      const SiteCoord s{x, y};
      if (ann.on_outer_boundary(s) && sigma.at(s) == c && touches_inner[uf.find(d.index(s))]) return true;
    }
  }
  return false;
}

bool has_circuit(const DiagonalConfig& omega, const ColorConfig& sigma, const Annulus& ann, Color c) {
  return !has_radial_path(omega, sigma, ann, opposite(c));
}

}  // namespace diagperc
