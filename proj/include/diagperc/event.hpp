#pragma once

#include <string>
#include <vector>

#include "diagperc/connectivity.hpp"
#include "diagperc/lattice.hpp"

namespace diagperc {

/// Rectangle of cells inside a larger domain.
struct Window {
  CellCoord origin{0, 0};
  int cells_w = 1;
  int cells_h = 1;

  static Window whole(const RectDomain& d) { return {{0, 0}, d.cells_w(), d.cells_h()}; }
  bool covers(const RectDomain& d) const { return origin == CellCoord{0, 0} && cells_w == d.cells_w() && cells_h == d.cells_h(); }
  bool fits(const RectDomain& d) const {
    return origin.x >= 0 && origin.y >= 0 && cells_w >= 1 && cells_h >= 1 && origin.x + cells_w <= d.cells_w() &&
           origin.y + cells_h <= d.cells_h();
  }
  bool contains(SiteCoord s) const {
    return s.x >= origin.x && s.y >= origin.y && s.x <= origin.x + cells_w && s.y <= origin.y + cells_h;
  }
};

/// A predicate on (omega, sigma) supported on a finite rectangle.
class EventSpec {
 public:
  enum class Kind { Constant, Crossing, Circuit, Connection, FixedPath, Not, And, Or };

  static EventSpec constant(RectDomain d, bool value);
  /// Crossing of the window (whole domain by default) along `axis`.
  static EventSpec crossing(RectDomain d, Color c, Axis axis);
  static EventSpec crossing(RectDomain d, Color c, Axis axis, Window w);
  static EventSpec circuit(RectDomain d, Color c, Annulus ann);
  /// Some site of `from` joined to some site of `to` by a c-colored path
  /// that stays in the closed cells of `w`.
  static EventSpec connection(RectDomain d, std::vector<SiteCoord> from, std::vector<SiteCoord> to, Color c,
                              Window w);
  /// Every site of `path` has color c and consecutive sites are adjacent.
  static EventSpec fixed_path(RectDomain d, std::vector<SiteCoord> path, Color c);
  static EventSpec negation(EventSpec e);
  static EventSpec conjunction(EventSpec a, EventSpec b);
  static EventSpec disjunction(EventSpec a, EventSpec b);

  bool evaluate(const DiagonalConfig& omega, const ColorConfig& sigma) const;
  std::string describe() const;

  Kind kind() const { return kind_; }
  const RectDomain& domain() const { return domain_; }
  Color color() const { return color_; }
  Axis axis() const { return axis_; }
  const Window& window() const { return window_; }
  const std::vector<EventSpec>& children() const { return children_; }

  /// A crossing of the whole domain; these have a fast pivotal routine.
  bool is_full_crossing() const { return kind_ == Kind::Crossing && window_.covers(domain_); }

 private:
  explicit EventSpec(RectDomain d) : domain_(d) {}

  Kind kind_ = Kind::Constant;
  RectDomain domain_;
  bool value_ = true;
  Color color_ = Color::Red;
  Axis axis_ = Axis::LeftRight;
  Window window_;
  Annulus annulus_{};
  std::vector<SiteCoord> from_;
  std::vector<SiteCoord> to_;
  std::vector<EventSpec> children_;
};

std::string to_string(Color c);
std::string to_string(Axis a);

}  // namespace diagperc
