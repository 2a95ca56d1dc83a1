#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>

#include "diagperc/lattice.hpp"
#include "diagperc/sampler.hpp"

using namespace diagperc;

namespace {

constexpr std::array<Color, 2> kColors{Color::Blue, Color::Red};

std::set<SiteCoord> as_set(const std::vector<SiteCoord>& v) { return {v.begin(), v.end()}; }

CellType swap_ab(CellType t) {
  if (t == CellType::A) return CellType::B;
  if (t == CellType::B) return CellType::A;
  return t;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("classify_cell examples") {
  const Color R = Color::Red, B = Color::Blue;
  CHECK(classify_cell(B, B, B, B) == CellType::N);
  // NE, SW red; NW, SE blue.
  CHECK(classify_cell(B, R, R, B) == CellType::A);
  // Three red, blue at NE.
  CHECK(classify_cell(R, B, R, R) == CellType::B);
}

TEST_CASE("classify_cell census is 6 N / 5 A / 5 B") {
  int n = 0, a = 0, b = 0;
  for (Color nw : kColors)
    for (Color ne : kColors)
      for (Color sw : kColors)
        for (Color se : kColors) {
          switch (classify_cell(nw, ne, sw, se)) {
            case CellType::N: ++n; break;
            case CellType::A: ++a; break;
            case CellType::B: ++b; break;
          }
        }
  CHECK(n == 6);
  CHECK(a == 5);
  CHECK(b == 5);
}

TEST_CASE("classify_cell symmetries") {
  for (Color nw : kColors)
    for (Color ne : kColors)
      for (Color sw : kColors)
        for (Color se : kColors) {
          const CellType t = classify_cell(nw, ne, sw, se);
          // Mirror x -> -x swaps NW<->NE and SW<->SE, exchanging the diagonals.
          CHECK(classify_cell(ne, nw, se, sw) == swap_ab(t));
          CHECK(classify_cell(opposite(nw), opposite(ne), opposite(sw), opposite(se)) == swap_ab(t));
        }
}

TEST_CASE("flip_effect") {
  CHECK(flip_effect(CellType::N, Diagonal::NWSE, Diagonal::NESW) == FlipEffect::Neutral);
  CHECK(flip_effect(CellType::A, Diagonal::NWSE, Diagonal::NESW) == FlipEffect::Increases);
  CHECK(flip_effect(CellType::A, Diagonal::NESW, Diagonal::NWSE) == FlipEffect::Decreases);
  CHECK(flip_effect(CellType::B, Diagonal::NWSE, Diagonal::NESW) == FlipEffect::Decreases);
  CHECK(flip_effect(CellType::B, Diagonal::NESW, Diagonal::NWSE) == FlipEffect::Increases);
  CHECK_THROWS_AS(flip_effect(CellType::A, Diagonal::NESW, Diagonal::NESW), DomainError);
  CHECK(flip(flip(Diagonal::NWSE)) == Diagonal::NWSE);
}

TEST_CASE("neighbors examples") {
  const RectDomain one(1, 1);
  CHECK(as_set(neighbors({0, 0}, one, DiagonalConfig(1, 1, Diagonal::NWSE))) ==
        std::set<SiteCoord>{{1, 0}, {0, 1}});
  CHECK(as_set(neighbors({0, 0}, one, DiagonalConfig(1, 1, Diagonal::NESW))) ==
        std::set<SiteCoord>{{1, 0}, {0, 1}, {1, 1}});

  const RectDomain two(2, 2);
  const auto nb = neighbors({1, 1}, two, DiagonalConfig(2, 2, Diagonal::NESW));
  CHECK(nb.size() == 6);
  CHECK(as_set(nb) == std::set<SiteCoord>{{0, 1}, {2, 1}, {1, 0}, {1, 2}, {0, 0}, {2, 2}});

  CHECK_THROWS_AS(neighbors({3, 0}, two, DiagonalConfig(2, 2)), DomainError);
  CHECK_THROWS_AS(neighbors({0, -1}, two, DiagonalConfig(2, 2)), DomainError);
}

TEST_CASE("neighbors is symmetric and duplicate-free on random diagonals") {
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    const RectDomain d(1 + static_cast<int>(rep % 5), 1 + static_cast<int>(rep % 3));
    const DiagonalConfig omega = sample_diagonals({7, rep}, d);
    for (std::size_t i = 0; i < d.num_sites(); ++i) {
      const SiteCoord u = d.site_at(i);
      const auto nu = neighbors(u, d, omega);
      CHECK(as_set(nu).size() == nu.size());
      for (const auto& v : nu) {
        const auto nv = neighbors(v, d, omega);
        CHECK(std::find(nv.begin(), nv.end(), u) != nv.end());
      }
    }
  }
}

TEST_CASE("RectDomain rejects bad sizes") {
  CHECK_THROWS_AS(RectDomain(0, 3), DomainError);
  CHECK_THROWS_AS(RectDomain(3, -1), DomainError);
  CHECK_THROWS_AS(RectDomain(RectDomain::kMaxSide + 1, 1), DomainError);
  CHECK_NOTHROW(RectDomain(RectDomain::kMaxSide, 1));
}

TEST_CASE("text dump round trip") {
  // Dump convention: site rows north to south, then cell rows north to south.
  const std::string text =
      "RBR\n"
      "BBR\n"
      "RRB\n"
      "\\/\n"
      "//\n";
  const Configuration cfg = parse_config(text);
  CHECK(cfg.sigma.at({0, 2}) == Color::Red);
  CHECK(cfg.sigma.at({1, 2}) == Color::Blue);
  CHECK(cfg.sigma.at({2, 0}) == Color::Blue);
  CHECK(cfg.omega.at({0, 1}) == Diagonal::NWSE);
  CHECK(cfg.omega.at({1, 1}) == Diagonal::NESW);
  CHECK(cfg.omega.at({0, 0}) == Diagonal::NESW);
  CHECK(dump_config(cfg.omega, cfg.sigma) == text);

  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const RectDomain d(1 + static_cast<int>(rep % 4), 2 + static_cast<int>(rep % 3));
    const Configuration c = sample_configuration({3, rep}, 0.5, d);
    const Configuration back = parse_config(dump_config(c.omega, c.sigma));
    CHECK(back.omega == c.omega);
    CHECK(back.sigma == c.sigma);
  }
}

TEST_CASE("text dump rejects malformed input") {
  CHECK_THROWS_AS(parse_config(""), DomainError);
  CHECK_THROWS_AS(parse_config("RB\nRB\n"), DomainError);       // missing cell row
  CHECK_THROWS_AS(parse_config("RB\nRB\nx\n"), DomainError);    // bad glyph
  CHECK_THROWS_AS(parse_config("RB\nRB\n//\n"), DomainError);   // cell row too wide
}

}  // TEST_SUITE
