#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diagperc/lattice.hpp"
#include "diagperc/sampler.hpp"

namespace diagperc {

/// Reveals site colors and cell diagonals on demand from a counter-based
/// key. A revealed value never changes and equals the eager sample for the
/// same key unless it was pinned beforehand.
class LazySource {
 public:
  LazySource(RectDomain d, SamplerKey key, double p);

  /// Fixes a value before exploration; it is returned instead of the sample.
  void pin(SiteCoord s, Color c);
  void pin(CellCoord c, Diagonal o);

  Color color(SiteCoord s);
  Diagonal diagonal(CellCoord c);

  bool revealed(SiteCoord s) const { return site_state_[domain_.index(s)] >= 0; }
  bool revealed(CellCoord c) const { return cell_state_[domain_.index(c)] >= 0; }

  const std::vector<std::pair<SiteCoord, Color>>& revealed_sites() const { return site_order_; }
  const std::vector<std::pair<CellCoord, Diagonal>>& revealed_cells() const { return cell_order_; }

  const RectDomain& domain() const { return domain_; }
  SamplerKey key() const { return key_; }
  double p() const { return p_; }

 private:
  RectDomain domain_;
  SamplerKey key_;
  double p_;
  std::vector<std::int8_t> site_state_;  // -1 hidden, else Color
  std::vector<std::int8_t> cell_state_;  // -1 hidden, else Diagonal
  std::vector<std::int8_t> site_pin_;
  std::vector<std::int8_t> cell_pin_;
  std::vector<std::pair<SiteCoord, Color>> site_order_;
  std::vector<std::pair<CellCoord, Diagonal>> cell_order_;
};

/// A vertex of the rectangle's triangulation closed off by four virtual
/// boundary vertices: Left and Right count as red, Top and Bottom as blue.
struct InterfaceVertex {
  enum class Kind : std::uint8_t { Site, Left, Top, Right, Bottom };
  Kind kind = Kind::Site;
  SiteCoord site{};

  static InterfaceVertex at(SiteCoord s) { return {Kind::Site, s}; }
  static InterfaceVertex left() { return {Kind::Left, {}}; }
  static InterfaceVertex top() { return {Kind::Top, {}}; }
  static InterfaceVertex right() { return {Kind::Right, {}}; }
  static InterfaceVertex bottom() { return {Kind::Bottom, {}}; }

  friend bool operator==(InterfaceVertex, InterfaceVertex) = default;
};

/// The directed edge the interface is crossing: `red` is red, `blue` is blue.
struct InterfaceState {
  InterfaceVertex red;
  InterfaceVertex blue;
};

struct ExplorationStep {
  InterfaceState edge;
  InterfaceVertex apex;
  Color apex_color = Color::Red;
  std::optional<std::pair<CellCoord, Diagonal>> revealed_cell;
};

enum class ExitSide : std::uint8_t { Right, Bottom };

struct ExplorationResult {
  ExitSide exit_side = ExitSide::Right;
  std::vector<std::pair<SiteCoord, Color>> revealed_sites;
  std::vector<std::pair<CellCoord, Diagonal>> revealed_cells;
  std::size_t step_count = 0;
  std::vector<ExplorationStep> trace;  // filled only when requested
};

/// Number of triangles of the rectangle closed by the four virtual vertices;
/// no exploration enters more.
std::size_t triangle_count(const RectDomain& d);

/// Walks the interface between the red cluster of the left side and the blue
/// cluster of the top side, starting in the top-left corner. Exits Right iff
/// a red left-right crossing exists, Bottom iff a blue top-bottom one does.
ExplorationResult explore(const RectDomain& d, LazySource& src, bool record_trace = false);

/// Convenience overload on a fresh source.
ExplorationResult explore(const RectDomain& d, SamplerKey key, double p, bool record_trace = false);

/// Re-runs the exploration `resamples` times with every revealed value pinned
/// and every hidden value drawn from a fresh key; true iff the exit side
/// never changes.
bool exploration_measurability_check(const RectDomain& d, const ExplorationResult& run, SamplerKey key,
                                     double p, int resamples);

/// Exit side when everything revealed in `run` is pinned except that the
/// revealed site `flipped` has its color switched. Hidden values come from `key`.
ExitSide exit_with_flipped_site(const RectDomain& d, const ExplorationResult& run, SamplerKey key, double p,
                                SiteCoord flipped);

/// One line per step "(ux,uy)-(vx,vy) apex=(ax,ay) color=R|B", preceded by
/// "cell (x,y)=\|/" whenever the step revealed a diagonal. Virtual boundary
/// vertices print as (L), (T), (R), (B).
std::string format_trace(const ExplorationResult& r);

}  // namespace diagperc
