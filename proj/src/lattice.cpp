#include "diagperc/lattice.hpp"

#include <sstream>

namespace diagperc {

RectDomain::RectDomain(int cells_w, int cells_h) : w_(cells_w), h_(cells_h) {
  if (cells_w < 1 || cells_h < 1 || cells_w > kMaxSide || cells_h > kMaxSide) {
    throw DomainError("RectDomain: sides must lie in [1, 16384], got " + std::to_string(cells_w) +
                      "x" + std::to_string(cells_h));
  }
}

DiagonalConfig::DiagonalConfig(int cells_w, int cells_h, Diagonal fill)
    : w_(cells_w), h_(cells_h), data_(static_cast<std::size_t>(cells_w) * cells_h, fill) {
  if (cells_w < 0 || cells_h < 0) throw DomainError("DiagonalConfig: negative size");
}

DiagonalConfig DiagonalConfig::crop(CellCoord origin, int cells_w, int cells_h) const {
  if (origin.x < 0 || origin.y < 0 || cells_w < 0 || cells_h < 0 || origin.x + cells_w > w_ ||
      origin.y + cells_h > h_) {
    throw DomainError("DiagonalConfig::crop: window outside grid");
  }
  DiagonalConfig out(cells_w, cells_h);
  for (int y = 0; y < cells_h; ++y)
    for (int x = 0; x < cells_w; ++x) out.set({x, y}, at({origin.x + x, origin.y + y}));
  return out;
}

ColorConfig::ColorConfig(int cells_w, int cells_h, Color fill)
    : w_(cells_w), h_(cells_h), data_(static_cast<std::size_t>(cells_w + 1) * (cells_h + 1), fill) {
  if (cells_w < 0 || cells_h < 0) throw DomainError("ColorConfig: negative size");
}

std::size_t ColorConfig::count(Color c) const {
  std::size_t n = 0;
  for (Color v : data_) n += (v == c);
  return n;
}

ColorConfig ColorConfig::crop(SiteCoord origin, int cells_w, int cells_h) const {
  if (origin.x < 0 || origin.y < 0 || cells_w < 0 || cells_h < 0 || origin.x + cells_w > w_ ||
      origin.y + cells_h > h_) {
    throw DomainError("ColorConfig::crop: window outside grid");
  }
  ColorConfig out(cells_w, cells_h);
  for (int y = 0; y <= cells_h; ++y)
    for (int x = 0; x <= cells_w; ++x) out.set({x, y}, at({origin.x + x, origin.y + y}));
  return out;
}

namespace {

int pair_score(Color a, Color b) {
  if (a != b) return 0;
  return a == Color::Red ? 1 : -1;
}

}  // namespace

CellType classify_cell(Color nw, Color ne, Color sw, Color se) {
  const int nesw = pair_score(ne, sw);
  const int nwse = pair_score(nw, se);
  if (nesw > nwse) return CellType::A;
  if (nesw < nwse) return CellType::B;
  return CellType::N;
}

CellType classify_cell(const ColorConfig& sigma, CellCoord c) {
  return classify_cell(sigma.at(c.nw()), sigma.at(c.ne()), sigma.at(c.sw()), sigma.at(c.se()));
}

FlipEffect flip_effect(CellType t, Diagonal from, Diagonal to) {
  if (from == to) throw DomainError("flip_effect: from and to must differ");
  if (t == CellType::N) return FlipEffect::Neutral;
  const bool toward_nesw = (to == Diagonal::NESW);
  if (t == CellType::A) return toward_nesw ? FlipEffect::Increases : FlipEffect::Decreases;
  return toward_nesw ? FlipEffect::Decreases : FlipEffect::Increases;
}

bool diagonal_joins(Diagonal d, CellCoord c, SiteCoord a, SiteCoord b) {
  if (d == Diagonal::NESW) return (a == c.sw() && b == c.ne()) || (a == c.ne() && b == c.sw());
  return (a == c.nw() && b == c.se()) || (a == c.se() && b == c.nw());
}

std::vector<SiteCoord> neighbors(SiteCoord s, const RectDomain& d, const DiagonalConfig& omega) {
  if (!d.contains(s)) {
    throw DomainError("neighbors: site (" + std::to_string(s.x) + "," + std::to_string(s.y) +
                      ") outside domain");
  }
  if (!omega.matches(d)) throw DomainError("neighbors: diagonal grid does not match domain");
  std::vector<SiteCoord> out;
  out.reserve(6);
  for_each_neighbor(s, d, omega, [&](SiteCoord t) { out.push_back(t); });
  return out;
}

std::string dump_config(const DiagonalConfig& omega, const ColorConfig& sigma) {
  if (omega.cells_w() != sigma.cells_w() || omega.cells_h() != sigma.cells_h()) {
    throw DomainError("dump_config: grids have different sizes");
  }
  std::string out;
  const int w = sigma.cells_w();
  const int h = sigma.cells_h();
  out.reserve(static_cast<std::size_t>(w + 2) * (2 * h + 1));
  for (int y = h; y >= 0; --y) {
    for (int x = 0; x <= w; ++x) out.push_back(to_char(sigma.at({x, y})));
    out.push_back('\n');
  }
  for (int y = h - 1; y >= 0; --y) {
    for (int x = 0; x < w; ++x) out.push_back(to_char(omega.at({x, y})));
    out.push_back('\n');
  }
  return out;
}

Configuration parse_config(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    if (nl == std::string_view::npos) {
      lines.push_back(text);
      break;
    }
    lines.push_back(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
  if (lines.empty()) throw DomainError("parse_config: empty input");

  // Site rows are one character wider than cell rows.
  const std::size_t sites_w = lines.front().size();
  std::size_t site_rows = 0;
  while (site_rows < lines.size() && lines[site_rows].size() == sites_w &&
         lines[site_rows].find_first_not_of("RB") == std::string_view::npos) {
    ++site_rows;
  }
  if (sites_w < 2 || site_rows < 2) throw DomainError("parse_config: need at least 2x2 sites");
  const int w = static_cast<int>(sites_w) - 1;
  const int h = static_cast<int>(site_rows) - 1;
  if (lines.size() != site_rows + static_cast<std::size_t>(h)) {
    throw DomainError("parse_config: expected " + std::to_string(h) + " cell rows");
  }

  Configuration cfg{DiagonalConfig(w, h), ColorConfig(w, h)};
  for (int r = 0; r <= h; ++r) {
    const auto line = lines[r];
    for (int x = 0; x <= w; ++x) cfg.sigma.set({x, h - r}, line[x] == 'R' ? Color::Red : Color::Blue);
  }
  for (int r = 0; r < h; ++r) {
    const auto line = lines[site_rows + r];
    if (line.size() != static_cast<std::size_t>(w)) throw DomainError("parse_config: bad cell row width");
    for (int x = 0; x < w; ++x) {
      if (line[x] == '\\') cfg.omega.set({x, h - 1 - r}, Diagonal::NWSE);
      else if (line[x] == '/') cfg.omega.set({x, h - 1 - r}, Diagonal::NESW);
      else throw DomainError("parse_config: bad cell character");
    }
  }
  return cfg;
}

}  // namespace diagperc
