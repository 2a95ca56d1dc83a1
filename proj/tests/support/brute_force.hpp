#pragma once

// Test-only reference routines. They rebuild the triangulation from each
// cell's explicit edge list and search it with plain depth-first search, so
// they share no code path with the union-find and neighbor routines under
// test.

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "diagperc/lattice.hpp"

namespace diagperc::testing {

using Edge = std::pair<SiteCoord, SiteCoord>;

inline std::vector<Edge> triangulation_edges(const DiagonalConfig& omega, bool with_diagonals = true) {
  std::set<Edge> edges;
  auto add = [&](SiteCoord a, SiteCoord b) { edges.insert(a < b ? Edge{a, b} : Edge{b, a}); };
  for (int cy = 0; cy < omega.cells_h(); ++cy) {
    for (int cx = 0; cx < omega.cells_w(); ++cx) {
      const CellCoord c{cx, cy};
      add(c.sw(), c.se());
      add(c.nw(), c.ne());
      add(c.sw(), c.nw());
      add(c.se(), c.ne());
      if (!with_diagonals) continue;
      if (omega.at(c) == Diagonal::NESW) add(c.sw(), c.ne());
      else add(c.nw(), c.se());
    }
  }
  return {edges.begin(), edges.end()};
}

/// Monochromatic components; each site maps to the smallest member in
/// row-major (y, then x) order, or -1 for the other color.
inline std::vector<std::int64_t> dfs_labels(const DiagonalConfig& omega, const ColorConfig& sigma, Color c) {
  const RectDomain d(sigma.cells_w(), sigma.cells_h());
  std::map<SiteCoord, std::vector<SiteCoord>> adj;
  for (const auto& [a, b] : triangulation_edges(omega)) {
    if (sigma.at(a) == c && sigma.at(b) == c) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  std::vector<std::int64_t> label(d.num_sites(), -1);
  for (std::size_t i = 0; i < d.num_sites(); ++i) {
    const SiteCoord s = d.site_at(i);
    if (sigma.at(s) != c || label[i] != -1) continue;
    std::vector<SiteCoord> stack{s};
    label[i] = static_cast<std::int64_t>(i);
    while (!stack.empty()) {
      const SiteCoord u = stack.back();
      stack.pop_back();
      for (const auto& v : adj[u]) {
        auto& lv = label[d.index(v)];
        if (lv == -1) {
          lv = static_cast<std::int64_t>(i);
          stack.push_back(v);
        }
      }
    }
  }
  return label;
}

inline bool dfs_crossing(const DiagonalConfig& omega, const ColorConfig& sigma, Color c, bool left_right) {
  const RectDomain d(sigma.cells_w(), sigma.cells_h());
  const auto label = dfs_labels(omega, sigma, c);
  std::set<std::int64_t> first;
  for (std::size_t i = 0; i < d.num_sites(); ++i) {
    const SiteCoord s = d.site_at(i);
    if (label[i] >= 0 && (left_right ? s.x == 0 : s.y == d.cells_h())) first.insert(label[i]);
  }
  for (std::size_t i = 0; i < d.num_sites(); ++i) {
    const SiteCoord s = d.site_at(i);
    if (label[i] >= 0 && (left_right ? s.x == d.cells_w() : s.y == 0) && first.count(label[i])) return true;
  }
  return false;
}

/// Circuit oracle for an annulus: a c-colored cycle winds around the hole iff
/// union-find with winding offsets meets an edge closing a cycle of nonzero
/// winding. The winding of an edge is +-1 when it crosses the vertical ray
/// x = cx + 1/2, y > cy going upward from the hole centre (cx, cy).
inline bool winding_circuit(const DiagonalConfig& omega, const ColorConfig& sigma, SiteCoord origin, int n, Color c) {
  const int outer = 6 * n, inner = 4 * n;
  const SiteCoord io{origin.x + n, origin.y + n};
  const int cx = origin.x + 3 * n, cy = origin.y + 3 * n;
  auto in_sites = [&](SiteCoord s) {
    if (s.x < origin.x || s.y < origin.y || s.x > origin.x + outer || s.y > origin.y + outer) return false;
    return !(s.x > io.x && s.x < io.x + inner && s.y > io.y && s.y < io.y + inner);
  };
  auto in_cells = [&](CellCoord k) {
    if (k.x < origin.x || k.y < origin.y || k.x >= origin.x + outer || k.y >= origin.y + outer) return false;
    return !(k.x >= io.x && k.x < io.x + inner && k.y >= io.y && k.y < io.y + inner);
  };

  std::map<SiteCoord, std::pair<SiteCoord, int>> parent;  // parent, winding to parent
  auto find = [&](SiteCoord s) {
    int w = 0;
    SiteCoord cur = s;
    for (;;) {
      auto it = parent.find(cur);
      if (it == parent.end() || it->second.first == cur) break;
      w += it->second.second;
      cur = it->second.first;
    }
    return std::pair<SiteCoord, int>{cur, w};
  };

  for (int cyy = 0; cyy < omega.cells_h(); ++cyy) {
    for (int cxx = 0; cxx < omega.cells_w(); ++cxx) {
      const CellCoord k{cxx, cyy};
      if (!in_cells(k)) continue;
      std::vector<Edge> es{{k.sw(), k.se()}, {k.nw(), k.ne()}, {k.sw(), k.nw()}, {k.se(), k.ne()}};
      es.push_back(omega.at(k) == Diagonal::NESW ? Edge{k.sw(), k.ne()} : Edge{k.nw(), k.se()});
      for (const auto& [a, b] : es) {
        if (!in_sites(a) || !in_sites(b) || sigma.at(a) != c || sigma.at(b) != c) continue;
        // Winding of a -> b.
        int w = 0;
        const bool crosses = std::min(a.x, b.x) == cx && std::max(a.x, b.x) == cx + 1 && std::min(a.y, b.y) >= cy;
        if (crosses) w = (a.x == cx) ? 1 : -1;
        const auto [ra, wa] = find(a);
        const auto [rb, wb] = find(b);
        if (ra == rb) {
          if (w + wb - wa != 0) return true;
        } else {
          parent[ra] = {rb, w + wb - wa};
        }
      }
    }
  }
  return false;
}

}  // namespace diagperc::testing
