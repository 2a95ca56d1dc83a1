#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace diagperc {

/// Raised when a coordinate, dimension or geometric parameter does not fit
/// the domain it is used with.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Color : std::uint8_t { Blue = 0, Red = 1 };

constexpr Color opposite(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }
constexpr char to_char(Color c) { return c == Color::Red ? 'R' : 'B'; }

/// NWSE joins the north-west and south-east corners of a cell ('\' in the
/// text dump), NESW joins north-east and south-west ('/').
enum class Diagonal : std::uint8_t { NWSE = 0, NESW = 1 };

constexpr Diagonal flip(Diagonal d) { return d == Diagonal::NWSE ? Diagonal::NESW : Diagonal::NWSE; }
constexpr char to_char(Diagonal d) { return d == Diagonal::NWSE ? '\\' : '/'; }

enum class CellType : std::uint8_t { N, A, B };

enum class FlipEffect : std::uint8_t { Increases, Decreases, Neutral };

struct SiteCoord {
  int x = 0;
  int y = 0;
  friend constexpr bool operator==(SiteCoord, SiteCoord) = default;
  friend constexpr auto operator<=>(SiteCoord, SiteCoord) = default;
};

/// A unit cell named by its south-west corner.
struct CellCoord {
  int x = 0;
  int y = 0;
  friend constexpr bool operator==(CellCoord, CellCoord) = default;
  friend constexpr auto operator<=>(CellCoord, CellCoord) = default;

  constexpr SiteCoord sw() const { return {x, y}; }
  constexpr SiteCoord se() const { return {x + 1, y}; }
  constexpr SiteCoord nw() const { return {x, y + 1}; }
  constexpr SiteCoord ne() const { return {x + 1, y + 1}; }
};

/// Rectangle of cells_w x cells_h unit cells, i.e. (cells_w+1) x (cells_h+1)
/// sites. The y axis points north: Bottom is y = 0 and Top is y = cells_h.
/// Corner sites belong to both boundary arcs that meet there.
class RectDomain {
 public:
  static constexpr int kMaxSide = 1 << 14;

  RectDomain(int cells_w, int cells_h);

  int cells_w() const { return w_; }
  int cells_h() const { return h_; }
  int sites_w() const { return w_ + 1; }
  int sites_h() const { return h_ + 1; }
  std::size_t num_sites() const { return static_cast<std::size_t>(w_ + 1) * (h_ + 1); }
  std::size_t num_cells() const { return static_cast<std::size_t>(w_) * h_; }

  bool contains(SiteCoord s) const { return s.x >= 0 && s.y >= 0 && s.x <= w_ && s.y <= h_; }
  bool contains(CellCoord c) const { return c.x >= 0 && c.y >= 0 && c.x < w_ && c.y < h_; }

  /// Row-major index, rows ordered by y.
  std::size_t index(SiteCoord s) const { return static_cast<std::size_t>(s.y) * (w_ + 1) + s.x; }
  std::size_t index(CellCoord c) const { return static_cast<std::size_t>(c.y) * w_ + c.x; }
  SiteCoord site_at(std::size_t i) const {
    return {static_cast<int>(i % (w_ + 1)), static_cast<int>(i / (w_ + 1))};
  }
  CellCoord cell_at(std::size_t i) const {
    return {static_cast<int>(i % w_), static_cast<int>(i / w_)};
  }

  bool on_left(SiteCoord s) const { return s.x == 0; }
  bool on_right(SiteCoord s) const { return s.x == w_; }
  bool on_bottom(SiteCoord s) const { return s.y == 0; }
  bool on_top(SiteCoord s) const { return s.y == h_; }

  friend bool operator==(const RectDomain&, const RectDomain&) = default;

 private:
  int w_;
  int h_;
};

/// Dense grid of diagonal orientations, one per cell.
class DiagonalConfig {
 public:
  DiagonalConfig(int cells_w, int cells_h, Diagonal fill = Diagonal::NWSE);

  int cells_w() const { return w_; }
  int cells_h() const { return h_; }
  Diagonal at(CellCoord c) const { return data_[index(c)]; }
  void set(CellCoord c, Diagonal d) { data_[index(c)] = d; }
  void toggle(CellCoord c) { data_[index(c)] = flip(data_[index(c)]); }
  bool matches(const RectDomain& d) const { return d.cells_w() == w_ && d.cells_h() == h_; }

  /// Sub-grid of `cells_w x cells_h` cells whose south-west cell is `origin`.
  DiagonalConfig crop(CellCoord origin, int cells_w, int cells_h) const;

  friend bool operator==(const DiagonalConfig&, const DiagonalConfig&) = default;

 private:
  std::size_t index(CellCoord c) const { return static_cast<std::size_t>(c.y) * w_ + c.x; }

  int w_;
  int h_;
  std::vector<Diagonal> data_;
};

/// Dense grid of site colors sized for a cells_w x cells_h domain.
class ColorConfig {
 public:
  ColorConfig(int cells_w, int cells_h, Color fill = Color::Blue);

  int cells_w() const { return w_; }
  int cells_h() const { return h_; }
  Color at(SiteCoord s) const { return data_[index(s)]; }
  void set(SiteCoord s, Color c) { data_[index(s)] = c; }
  void toggle(SiteCoord s) { data_[index(s)] = opposite(data_[index(s)]); }
  bool matches(const RectDomain& d) const { return d.cells_w() == w_ && d.cells_h() == h_; }
  std::size_t count(Color c) const;

  ColorConfig crop(SiteCoord origin, int cells_w, int cells_h) const;

  friend bool operator==(const ColorConfig&, const ColorConfig&) = default;

 private:
  std::size_t index(SiteCoord s) const { return static_cast<std::size_t>(s.y) * (w_ + 1) + s.x; }

  int w_;
  int h_;
  std::vector<Color> data_;
};

/// Compares the diagonal that joins a red pair of corners against the other
/// one. Each diagonal scores +1 when both its ends are red, -1 when both are
/// blue and 0 otherwise; A means NESW scores higher, B means NWSE does.
CellType classify_cell(Color nw, Color ne, Color sw, Color se);
CellType classify_cell(const ColorConfig& sigma, CellCoord c);

/// Effect of switching a cell of type `t` from `from` to `to` on any robust
/// event increasing in the diagonals. Requires from != to.
FlipEffect flip_effect(CellType t, Diagonal from, Diagonal to);

/// True when the cell's diagonal joins sites `a` and `b` (in either order).
bool diagonal_joins(Diagonal d, CellCoord c, SiteCoord a, SiteCoord b);

/// Orthogonal neighbours of `s` inside `d` plus the far corner of every
/// incident cell whose diagonal touches `s`. At most 6 entries, no duplicates.
std::vector<SiteCoord> neighbors(SiteCoord s, const RectDomain& d, const DiagonalConfig& omega);

/// Calls f(neighbor) without allocating. Same set and order as neighbors().
template <typename F>
void for_each_neighbor(SiteCoord s, const RectDomain& d, const DiagonalConfig& omega, F&& f) {
  const int w = d.cells_w();
  const int h = d.cells_h();
  if (s.x + 1 <= w) f(SiteCoord{s.x + 1, s.y});
  if (s.x - 1 >= 0) f(SiteCoord{s.x - 1, s.y});
  if (s.y + 1 <= h) f(SiteCoord{s.x, s.y + 1});
  if (s.y - 1 >= 0) f(SiteCoord{s.x, s.y - 1});
  // s is the SW corner of cell (x, y): NESW reaches NE.
  if (s.x < w && s.y < h && omega.at({s.x, s.y}) == Diagonal::NESW) f(SiteCoord{s.x + 1, s.y + 1});
  // s is the NE corner of cell (x-1, y-1): NESW reaches SW.
  if (s.x > 0 && s.y > 0 && omega.at({s.x - 1, s.y - 1}) == Diagonal::NESW) f(SiteCoord{s.x - 1, s.y - 1});
  // s is the SE corner of cell (x-1, y): NWSE reaches NW.
  if (s.x > 0 && s.y < h && omega.at({s.x - 1, s.y}) == Diagonal::NWSE) f(SiteCoord{s.x - 1, s.y + 1});
  // s is the NW corner of cell (x, y-1): NWSE reaches SE.
  if (s.x < w && s.y > 0 && omega.at({s.x, s.y - 1}) == Diagonal::NWSE) f(SiteCoord{s.x + 1, s.y - 1});
}

/// Text dump: one line per site row (R/B), then one line per cell row
/// (\ or /). Rows are written north to south so the dump reads like the
/// picture. Each line ends with '\n'.
std::string dump_config(const DiagonalConfig& omega, const ColorConfig& sigma);

struct Configuration {
  DiagonalConfig omega;
  ColorConfig sigma;
};

/// Inverse of dump_config. Throws DomainError on malformed input.
Configuration parse_config(std::string_view text);

}  // namespace diagperc
