#include "diagperc/event.hpp"

#include <algorithm>
#include <cstdlib>

namespace diagperc {

std::string to_string(Color c) { return c == Color::Red ? "red" : "blue"; }
std::string to_string(Axis a) { return a == Axis::LeftRight ? "left-right" : "top-bottom"; }

namespace {

std::string coord_text(SiteCoord s) { return "(" + std::to_string(s.x) + "," + std::to_string(s.y) + ")"; }

std::string window_text(const Window& w) {
  return std::to_string(w.cells_w) + "x" + std::to_string(w.cells_h) + "@" +
         coord_text({w.origin.x, w.origin.y});
}

std::string sites_text(const std::vector<SiteCoord>& sites) {
  std::string out = "{";
  for (std::size_t i = 0; i < sites.size(); ++i) out += (i ? "," : "") + coord_text(sites[i]);
  return out + "}";
}

void require_sites(const RectDomain& d, const std::vector<SiteCoord>& sites, const char* what) {
  for (const auto& s : sites) {
    if (!d.contains(s)) throw DomainError(std::string(what) + ": site " + coord_text(s) + " outside domain");
  }
}

}  // namespace

EventSpec EventSpec::constant(RectDomain d, bool value) {
  EventSpec e(d);
  e.kind_ = Kind::Constant;
  e.value_ = value;
  return e;
}

EventSpec EventSpec::crossing(RectDomain d, Color c, Axis axis) { return crossing(d, c, axis, Window::whole(d)); }

EventSpec EventSpec::crossing(RectDomain d, Color c, Axis axis, Window w) {
  if (!w.fits(d)) throw DomainError("crossing event: window " + window_text(w) + " outside domain");
  EventSpec e(d);
  e.kind_ = Kind::Crossing;
  e.color_ = c;
  e.axis_ = axis;
  e.window_ = w;
  return e;
}

EventSpec EventSpec::circuit(RectDomain d, Color c, Annulus ann) {
  const int side = ann.outer_side();
  if (ann.n < 1 || ann.origin.x < 0 || ann.origin.y < 0 || ann.origin.x + side > d.cells_w() ||
      ann.origin.y + side > d.cells_h()) {
    throw DomainError("circuit event: annulus does not fit in the domain");
  }
  EventSpec e(d);
  e.kind_ = Kind::Circuit;
  e.color_ = c;
  e.annulus_ = ann;
  return e;
}

EventSpec EventSpec::connection(RectDomain d, std::vector<SiteCoord> from, std::vector<SiteCoord> to, Color c,
                                Window w) {
  if (!w.fits(d)) throw DomainError("connection event: window " + window_text(w) + " outside domain");
  require_sites(d, from, "connection event");
  require_sites(d, to, "connection event");
  EventSpec e(d);
  e.kind_ = Kind::Connection;
  e.color_ = c;
  e.window_ = w;
  e.from_ = std::move(from);
  e.to_ = std::move(to);
  return e;
}

EventSpec EventSpec::fixed_path(RectDomain d, std::vector<SiteCoord> path, Color c) {
  if (path.empty()) throw DomainError("fixed-path event: empty path");
  require_sites(d, path, "fixed-path event");
  EventSpec e(d);
  e.kind_ = Kind::FixedPath;
  e.color_ = c;
  e.from_ = std::move(path);
  return e;
}

EventSpec EventSpec::negation(EventSpec inner) {
  EventSpec e(inner.domain_);
  e.kind_ = Kind::Not;
  e.children_.push_back(std::move(inner));
  return e;
}

EventSpec EventSpec::conjunction(EventSpec a, EventSpec b) {
  if (!(a.domain_ == b.domain_)) throw DomainError("conjunction: operands live on different domains");
  EventSpec e(a.domain_);
  e.kind_ = Kind::And;
  e.children_.push_back(std::move(a));
  e.children_.push_back(std::move(b));
  return e;
}

EventSpec EventSpec::disjunction(EventSpec a, EventSpec b) {
  if (!(a.domain_ == b.domain_)) throw DomainError("disjunction: operands live on different domains");
  EventSpec e(a.domain_);
  e.kind_ = Kind::Or;
  e.children_.push_back(std::move(a));
  e.children_.push_back(std::move(b));
  return e;
}

bool EventSpec::evaluate(const DiagonalConfig& omega, const ColorConfig& sigma) const {
  if (!omega.matches(domain_) || !sigma.matches(domain_)) {
    throw DomainError("event " + describe() + ": configuration does not match its domain");
  }
  switch (kind_) {
    case Kind::Constant: return value_;
    case Kind::Crossing: {
      if (window_.covers(domain_)) return has_crossing(omega, sigma, domain_, color_, axis_);
      const RectDomain sub(window_.cells_w, window_.cells_h);
      return has_crossing(omega.crop(window_.origin, window_.cells_w, window_.cells_h),
                          sigma.crop(window_.origin.sw(), window_.cells_w, window_.cells_h), sub, color_, axis_);
    }
    case Kind::Circuit: return has_circuit(omega, sigma, annulus_, color_);
    case Kind::Connection: {
      const RectDomain sub(window_.cells_w, window_.cells_h);
      const ClusterLabeling lab =
          build_clusters(omega.crop(window_.origin, window_.cells_w, window_.cells_h),
                         sigma.crop(window_.origin.sw(), window_.cells_w, window_.cells_h), sub, color_);
      const auto local = [&](SiteCoord s) { return SiteCoord{s.x - window_.origin.x, s.y - window_.origin.y}; };
      for (const auto& a : from_) {
        if (!window_.contains(a)) continue;
        const auto ida = lab.id(local(a));
        if (ida == ClusterLabeling::kNone) continue;
        for (const auto& b : to_) {
          if (window_.contains(b) && lab.id(local(b)) == ida) return true;
        }
      }
      return false;
    }
    case Kind::FixedPath: {
      for (std::size_t i = 0; i < from_.size(); ++i) {
        if (sigma.at(from_[i]) != color_) return false;
        if (i == 0) continue;
        const SiteCoord a = from_[i - 1], b = from_[i];
        const int dx = b.x - a.x, dy = b.y - a.y;
        if (std::abs(dx) + std::abs(dy) == 1) continue;
        if (std::abs(dx) != 1 || std::abs(dy) != 1) return false;
        const CellCoord cell{std::min(a.x, b.x), std::min(a.y, b.y)};
        if (!diagonal_joins(omega.at(cell), cell, a, b)) return false;
      }
      return true;
    }
    case Kind::Not: return !children_[0].evaluate(omega, sigma);
    case Kind::And: return children_[0].evaluate(omega, sigma) && children_[1].evaluate(omega, sigma);
    case Kind::Or: return children_[0].evaluate(omega, sigma) || children_[1].evaluate(omega, sigma);
  }
  return false;
}

std::string EventSpec::describe() const {
  switch (kind_) {
    case Kind::Constant: return value_ ? "true" : "false";
    case Kind::Crossing: {
      std::string s = to_string(color_) + " " + to_string(axis_) + " crossing";
      if (!window_.covers(domain_)) s += " of " + window_text(window_);
      return s;
    }
    case Kind::Circuit:
      return to_string(color_) + " circuit in annulus n=" + std::to_string(annulus_.n) + " at " +
             coord_text(annulus_.origin);
    case Kind::Connection:
      return to_string(color_) + " connection " + sites_text(from_) + " to " + sites_text(to_) + " in " +
             window_text(window_);
    case Kind::FixedPath: return to_string(color_) + " path " + sites_text(from_);
    case Kind::Not: return "not(" + children_[0].describe() + ")";
    case Kind::And: return "(" + children_[0].describe() + ") and (" + children_[1].describe() + ")";
    case Kind::Or: return "(" + children_[0].describe() + ") or (" + children_[1].describe() + ")";
  }
  return {};
}

}  // namespace diagperc
