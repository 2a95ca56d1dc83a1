#include "diagperc/exploration.hpp"

#include <array>
#include <stdexcept>

namespace diagperc {

LazySource::LazySource(RectDomain d, SamplerKey key, double p)
    : domain_(d),
      key_(key),
      p_(p),
      site_state_(d.num_sites(), -1),
      cell_state_(d.num_cells(), -1),
      site_pin_(d.num_sites(), -1),
      cell_pin_(d.num_cells(), -1) {
  check_probability(p);
}

void LazySource::pin(SiteCoord s, Color c) {
  if (!domain_.contains(s)) throw DomainError("LazySource::pin: site outside domain");
  site_pin_[domain_.index(s)] = static_cast<std::int8_t>(c);
}

void LazySource::pin(CellCoord c, Diagonal o) {
  if (!domain_.contains(c)) throw DomainError("LazySource::pin: cell outside domain");
  cell_pin_[domain_.index(c)] = static_cast<std::int8_t>(o);
}

Color LazySource::color(SiteCoord s) {
  const auto i = domain_.index(s);
  if (site_state_[i] < 0) {
    const Color c = site_pin_[i] >= 0 ? static_cast<Color>(site_pin_[i]) : sample_color(key_, p_, s);
    site_state_[i] = static_cast<std::int8_t>(c);
    site_order_.emplace_back(s, c);
  }
  return static_cast<Color>(site_state_[i]);
}

Diagonal LazySource::diagonal(CellCoord c) {
  const auto i = domain_.index(c);
  if (cell_state_[i] < 0) {
    const Diagonal o = cell_pin_[i] >= 0 ? static_cast<Diagonal>(cell_pin_[i]) : sample_diagonal(key_, c);
    cell_state_[i] = static_cast<std::int8_t>(o);
    cell_order_.emplace_back(c, o);
  }
  return static_cast<Diagonal>(cell_state_[i]);
}

std::size_t triangle_count(const RectDomain& d) {
  const std::size_t w = d.cells_w(), h = d.cells_h();
  return 2 * w * h + 2 * (w + h) + 4;
}

namespace {

using Kind = InterfaceVertex::Kind;

// Third vertex of the triangle of `cell` (diagonal `o`) that has side {a, b}.
SiteCoord third_vertex(CellCoord cell, Diagonal o, SiteCoord a, SiteCoord b) {
  std::array<std::array<SiteCoord, 3>, 2> tris;
  if (o == Diagonal::NESW) {
    tris = {{{cell.sw(), cell.se(), cell.ne()}, {cell.sw(), cell.nw(), cell.ne()}}};
  } else {
    tris = {{{cell.nw(), cell.sw(), cell.se()}, {cell.nw(), cell.ne(), cell.se()}}};
  }
  for (const auto& t : tris) {
    int hits = 0;
    SiteCoord other{};
    for (const auto& s : t) {
      if (s == a || s == b) ++hits;
      else other = s;
    }
    if (hits == 2) return other;
  }
  throw std::logic_error("exploration: edge is not a side of the cell");
}

class Walker {
 public:
  Walker(const RectDomain& d, LazySource& src) : d_(d), src_(src) {}

  // The triangle on the right-hand side of red -> blue (y pointing north).
  // Returns the apex and, if a diagonal had to be revealed, that cell.
  InterfaceVertex apex(const InterfaceState& e, std::optional<std::pair<CellCoord, Diagonal>>& revealed) {
    const InterfaceVertex& u = e.red;
    const InterfaceVertex& v = e.blue;
    const int w = d_.cells_w(), h = d_.cells_h();
    if (u.kind == Kind::Left && v.kind == Kind::Top) return InterfaceVertex::at({0, h});
    if (u.kind == Kind::Left && v.kind == Kind::Site) {
      return v.site.y > 0 ? InterfaceVertex::at({0, v.site.y - 1}) : InterfaceVertex::bottom();
    }
    if (u.kind == Kind::Site && v.kind == Kind::Top) {
      return u.site.x < w ? InterfaceVertex::at({u.site.x + 1, h}) : InterfaceVertex::right();
    }
    if (u.kind != Kind::Site || v.kind != Kind::Site) throw std::logic_error("exploration: unreachable edge");

    const SiteCoord a = u.site, b = v.site;
    const int dx = b.x - a.x, dy = b.y - a.y;
    if (dx != 0 && dy != 0) {
      const CellCoord cell{std::min(a.x, b.x), std::min(a.y, b.y)};
      // Already revealed: the edge is a diagonal of this cell.
      const SiteCoord c1 = (a == cell.sw() || a == cell.ne()) ? cell.nw() : cell.sw();
      const SiteCoord c2 = (a == cell.sw() || a == cell.ne()) ? cell.se() : cell.ne();
      const auto cross = [&](SiteCoord c) { return dx * (c.y - a.y) - dy * (c.x - a.x); };
      return InterfaceVertex::at(cross(c1) < 0 ? c1 : c2);
    }

    CellCoord cell{};
    if (dx == 1) {  // heading east, right-hand side is south
      if (a.y == 0) return InterfaceVertex::bottom();
      cell = {a.x, a.y - 1};
    } else if (dx == -1) {  // west, right is north
      if (a.y == h) return InterfaceVertex::top();
      cell = {b.x, b.y};
    } else if (dy == 1) {  // north, right is east
      if (a.x == w) return InterfaceVertex::right();
      cell = {a.x, a.y};
    } else {  // south, right is west
      if (a.x == 0) return InterfaceVertex::left();
      cell = {b.x - 1, b.y};
    }
    const bool fresh = !src_.revealed(cell);
    const Diagonal o = src_.diagonal(cell);
    if (fresh) revealed = std::make_pair(cell, o);
    return InterfaceVertex::at(third_vertex(cell, o, a, b));
  }

 private:
  const RectDomain& d_;
  LazySource& src_;
};

}  // namespace

ExplorationResult explore(const RectDomain& d, LazySource& src, bool record_trace) {
  if (!(src.domain() == d)) throw DomainError("explore: source domain differs from target domain");
  Walker walker(d, src);
  ExplorationResult out;
  InterfaceState e{InterfaceVertex::left(), InterfaceVertex::top()};
  const std::size_t limit = triangle_count(d);

  for (;;) {
    std::optional<std::pair<CellCoord, Diagonal>> revealed;
    const InterfaceVertex a = walker.apex(e, revealed);
    ++out.step_count;
    if (out.step_count > limit) throw std::logic_error("exploration: interface revisited a triangle");

    Color c;
    switch (a.kind) {
      case Kind::Site: c = src.color(a.site); break;
      case Kind::Left:
      case Kind::Right: c = Color::Red; break;
      default: c = Color::Blue; break;
    }
    if (record_trace) out.trace.push_back({e, a, c, revealed});
    if (a.kind == Kind::Right) {
      out.exit_side = ExitSide::Right;
      break;
    }
    if (a.kind == Kind::Bottom) {
      out.exit_side = ExitSide::Bottom;
      break;
    }
    if (c == Color::Red) e.red = a;
    else e.blue = a;
  }
  out.revealed_sites = src.revealed_sites();
  out.revealed_cells = src.revealed_cells();
  return out;
}

ExplorationResult explore(const RectDomain& d, SamplerKey key, double p, bool record_trace) {
  LazySource src(d, key, p);
  return explore(d, src, record_trace);
}

namespace {

LazySource pinned_source(const RectDomain& d, const ExplorationResult& run, SamplerKey key, double p) {
  LazySource src(d, key, p);
  for (const auto& [s, c] : run.revealed_sites) src.pin(s, c);
  for (const auto& [cell, o] : run.revealed_cells) src.pin(cell, o);
  return src;
}

}  // namespace

bool exploration_measurability_check(const RectDomain& d, const ExplorationResult& run, SamplerKey key, double p,
                                     int resamples) {
  for (int r = 0; r < resamples; ++r) {
    LazySource src = pinned_source(d, run, derive_key(key, static_cast<std::uint64_t>(r)), p);
    if (explore(d, src).exit_side != run.exit_side) return false;
  }
  return true;
}

ExitSide exit_with_flipped_site(const RectDomain& d, const ExplorationResult& run, SamplerKey key, double p,
                                SiteCoord flipped) {
  LazySource src = pinned_source(d, run, key, p);
  bool found = false;
  for (const auto& [s, c] : run.revealed_sites) {
    if (s == flipped) {
      src.pin(s, opposite(c));
      found = true;
    }
  }
  if (!found) throw DomainError("exit_with_flipped_site: site was not revealed");
  return explore(d, src).exit_side;
}

namespace {

std::string vertex_text(const InterfaceVertex& v) {
  switch (v.kind) {
    case Kind::Left: return "(L)";
    case Kind::Top: return "(T)";
    case Kind::Right: return "(R)";
    case Kind::Bottom: return "(B)";
    case Kind::Site: break;
  }
  return "(" + std::to_string(v.site.x) + "," + std::to_string(v.site.y) + ")";
}

}  // namespace

std::string format_trace(const ExplorationResult& r) {
  std::string out;
  for (const auto& step : r.trace) {
    if (step.revealed_cell) {
      const auto& [cell, o] = *step.revealed_cell;
      out += "cell (" + std::to_string(cell.x) + "," + std::to_string(cell.y) + ")=" + to_char(o) + "\n";
    }
    out += vertex_text(step.edge.red) + "-" + vertex_text(step.edge.blue) + " apex=" + vertex_text(step.apex) +
           " color=" + to_char(step.apex_color) + "\n";
  }
  return out;
}

}  // namespace diagperc
