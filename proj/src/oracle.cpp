#include "diagperc/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>

namespace diagperc {

// ---------------------------------------------------------------- Probability

namespace {

Rational exact_from_double(double p) {
  if (!std::isfinite(p)) throw DomainError("probability is not finite");
  int exp = 0;
  const double mant = std::frexp(p, &exp);
  // mant * 2^53 is an integer for every double.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  Rational r{BigInt(scaled)};
  const int shift = exp - 53;
  if (shift >= 0) r *= Rational(BigInt(1) << shift);
  else r /= Rational(BigInt(1) << -shift);
  return r;
}

void check_unit_interval(const Rational& r) {
  if (r < 0 || r > 1) throw DomainError("probability must lie in [0, 1]");
}

}  // namespace

Probability::Probability(double p) : exact_(exact_from_double(p)), value_(p) { check_unit_interval(exact_); }

Probability::Probability(Rational p) : exact_(std::move(p)), value_(exact_.convert_to<double>()) {
  check_unit_interval(exact_);
}

Probability Probability::parse(const std::string& text) {
  const auto slash = text.find('/');
  auto digits_only = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den) || BigInt(den) == 0) throw DomainError("bad probability '" + text + "'");
    return Probability(Rational(BigInt(num), BigInt(den)));
  }
  const auto dot = text.find('.');
  const std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
  const std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
  if ((whole.empty() || digits_only(whole)) && (frac.empty() || digits_only(frac)) && !(whole.empty() && frac.empty())) {
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const BigInt num(whole.empty() ? "0" : whole);
    const BigInt f(frac.empty() ? "0" : frac);
    return Probability(Rational(num * scale + f, scale));
  }
  throw DomainError("bad probability '" + text + "'");
}

std::string Probability::text() const {
  return numerator(exact_).str() + "/" + denominator(exact_).str();
}

// ---------------------------------------------------------------- tables

TruthTable::TruthTable(RectDomain d, std::vector<std::uint8_t> bits)
    : domain_(d),
      sites_(static_cast<int>(d.num_sites())),
      cells_(static_cast<int>(d.num_cells())),
      bits_(std::move(bits)) {
  if (bits_.size() != (std::uint64_t{1} << (sites_ + cells_))) throw DomainError("TruthTable: wrong size");
}

void check_budget(const RectDomain& d) {
  const auto bits = d.num_sites() + d.num_cells();
  if (bits > static_cast<std::size_t>(kEnumerationBudgetBits)) throw BudgetExceeded(static_cast<int>(bits));
}

DiagonalConfig diagonals_from_bits(const RectDomain& d, std::uint64_t omega) {
  DiagonalConfig out(d.cells_w(), d.cells_h());
  for (std::size_t j = 0; j < d.num_cells(); ++j)
    out.set(d.cell_at(j), ((omega >> j) & 1U) ? Diagonal::NESW : Diagonal::NWSE);
  return out;
}

ColorConfig colors_from_bits(const RectDomain& d, std::uint64_t sigma) {
  ColorConfig out(d.cells_w(), d.cells_h());
  for (std::size_t i = 0; i < d.num_sites(); ++i)
    out.set(d.site_at(i), ((sigma >> i) & 1U) ? Color::Red : Color::Blue);
  return out;
}

TruthTable tabulate(const EventSpec& e, Execution ex) {
  const RectDomain& d = e.domain();
  check_budget(d);
  const int sites = static_cast<int>(d.num_sites());
  const std::int64_t n_omega = std::int64_t{1} << d.num_cells();
  const std::uint64_t n_sigma = std::uint64_t{1} << sites;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_omega) * n_sigma);

  auto fill_row = [&](std::int64_t w) {
    const DiagonalConfig omega = diagonals_from_bits(d, static_cast<std::uint64_t>(w));
    ColorConfig sigma(d.cells_w(), d.cells_h());
    std::uint64_t prev = 0;
    const std::size_t base = static_cast<std::size_t>(w) * n_sigma;
    for (std::uint64_t s = 0; s < n_sigma; ++s) {
      // Only the sites whose bit changed need rewriting.
      for (std::uint64_t diff = s ^ prev; diff; diff &= diff - 1) {
        const int i = std::countr_zero(diff);
        sigma.set(d.site_at(i), ((s >> i) & 1U) ? Color::Red : Color::Blue);
      }
      prev = s;
      bits[base + s] = e.evaluate(omega, sigma);
    }
  };

  if (ex == Execution::Serial) {
    for (std::int64_t w = 0; w < n_omega; ++w) fill_row(w);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t w = 0; w < n_omega; ++w) fill_row(w);
  }
  return TruthTable(d, std::move(bits));
}

// ---------------------------------------------------------------- probability

namespace {

Rational rational_pow(const Rational& base, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Per-omega partial counts merged in omega order.
template <typename RowFn>
std::vector<std::uint64_t> sum_rows(const TruthTable& t, RowFn&& row) {
  const int sites = t.num_sites();
  const std::int64_t n_omega = std::int64_t{1} << t.num_cells();
  std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(n_omega),
                                                  std::vector<std::uint64_t>(sites + 1, 0));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t w = 0; w < n_omega; ++w) row(static_cast<std::uint64_t>(w), partial[w]);
  std::vector<std::uint64_t> out(sites + 1, 0);
  for (const auto& p : partial)
    for (int r = 0; r <= sites; ++r) out[r] += p[r];
  return out;
}

}  // namespace

Rational bernstein_value(const std::vector<std::uint64_t>& counts, int num_cells, const Rational& p) {
  const int sites = static_cast<int>(counts.size()) - 1;
  const Rational q = 1 - p;
  Rational sum = 0;
  for (int r = 0; r <= sites; ++r) {
    if (counts[r] == 0) continue;
    sum += Rational(BigInt(counts[r])) * rational_pow(p, r) * rational_pow(q, sites - r);
  }
  return sum / Rational(BigInt(1) << num_cells);
}

Rational bernstein_derivative(const std::vector<std::uint64_t>& counts, int num_cells, const Rational& p) {
  const int sites = static_cast<int>(counts.size()) - 1;
  const Rational q = 1 - p;
  Rational sum = 0;
  for (int r = 0; r <= sites; ++r) {
    if (counts[r] == 0) continue;
    Rational term = 0;
    if (r > 0) term += r * rational_pow(p, r - 1) * rational_pow(q, sites - r);
    if (sites - r > 0) term -= (sites - r) * rational_pow(p, r) * rational_pow(q, sites - r - 1);
    sum += Rational(BigInt(counts[r])) * term;
  }
  return sum / Rational(BigInt(1) << num_cells);
}

std::uint64_t ExactResult::satisfying() const {
  std::uint64_t n = 0;
  for (auto c : counts_by_red) n += c;
  return n;
}

std::vector<Rational> ExactResult::power_coefficients() const {
  const int sites = num_sites;
  std::vector<Rational> coef(sites + 1, Rational(0));
  const Rational scale(BigInt(1) << num_cells);
  for (int k = 0; k <= sites; ++k) {
    BigInt acc = 0;
    for (int r = 0; r <= k; ++r) {
      if (counts_by_red[r] == 0) continue;
      BigInt term = BigInt(counts_by_red[r]) * binomial(sites - r, k - r);
      if ((k - r) % 2) acc -= term;
      else acc += term;
    }
    coef[k] = Rational(acc) / scale;
  }
  return coef;
}

ExactResult enumerate_prob(const TruthTable& t, const std::string& description, const Probability& p) {
  ExactResult out;
  out.event = description;
  out.domain = t.domain();
  out.num_sites = t.num_sites();
  out.num_cells = t.num_cells();
  out.p = p;
  const std::uint64_t n_sigma = std::uint64_t{1} << t.num_sites();
  out.counts_by_red = sum_rows(t, [&](std::uint64_t w, std::vector<std::uint64_t>& acc) {
    for (std::uint64_t s = 0; s < n_sigma; ++s)
      if (t.at(w, s)) ++acc[std::popcount(s)];
  });
  out.probability = bernstein_value(out.counts_by_red, out.num_cells, p.exact());
  out.probability_value = out.probability.convert_to<double>();
  return out;
}

ExactResult enumerate_prob(const EventSpec& e, const Probability& p) {
  return enumerate_prob(tabulate(e), e.describe(), p);
}

// ---------------------------------------------------------------- monotonicity

namespace {

struct CellCorners {
  std::array<std::size_t, 4> nw_ne_sw_se;
};

std::vector<CellCorners> cell_corners(const RectDomain& d) {
  std::vector<CellCorners> out(d.num_cells());
  for (std::size_t j = 0; j < d.num_cells(); ++j) {
    const CellCoord c = d.cell_at(j);
    out[j].nw_ne_sw_se = {d.index(c.nw()), d.index(c.ne()), d.index(c.sw()), d.index(c.se())};
  }
  return out;
}

CellType type_from_bits(const CellCorners& c, std::uint64_t sigma) {
  auto col = [&](std::size_t i) { return ((sigma >> i) & 1U) ? Color::Red : Color::Blue; };
  return classify_cell(col(c.nw_ne_sw_se[0]), col(c.nw_ne_sw_se[1]), col(c.nw_ne_sw_se[2]), col(c.nw_ne_sw_se[3]));
}

// Runs check(omega, witness) for every omega in parallel and returns the
// witness of the smallest failing omega.
template <typename RowCheck>
std::optional<Witness> first_witness(const TruthTable& t, RowCheck&& check) {
  const std::int64_t n_omega = std::int64_t{1} << t.num_cells();
  std::vector<std::optional<Witness>> found(static_cast<std::size_t>(n_omega));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t w = 0; w < n_omega; ++w) found[w] = check(static_cast<std::uint64_t>(w));
  for (auto& f : found)
    if (f) return f;
  return std::nullopt;
}

}  // namespace

RobustVerdict verify_robust(const TruthTable& t) {
  const auto corners = cell_corners(t.domain());
  const std::uint64_t n_sigma = std::uint64_t{1} << t.num_sites();
  RobustVerdict v;
  v.witness = first_witness(t, [&](std::uint64_t w) -> std::optional<Witness> {
    for (std::uint64_t s = 0; s < n_sigma; ++s) {
      for (std::size_t z = 0; z < corners.size(); ++z) {
        if ((w >> z) & 1U) continue;  // visit each pair from its NWSE side
        if (type_from_bits(corners[z], s) != CellType::N) continue;
        if (t.at(w, s) != t.at(w | (std::uint64_t{1} << z), s)) return Witness{w, s, z};
      }
    }
    return std::nullopt;
  });
  v.robust = !v.witness.has_value();
  return v;
}

RobustVerdict verify_robust(const EventSpec& e) { return verify_robust(tabulate(e)); }

IncreasingVerdict verify_increasing(const TruthTable& t) {
  const int sites = t.num_sites();
  const std::uint64_t n_sigma = std::uint64_t{1} << sites;
  IncreasingVerdict v;

  v.sigma_witness = first_witness(t, [&](std::uint64_t w) -> std::optional<Witness> {
    for (std::uint64_t s = 0; s < n_sigma; ++s) {
      if (!t.at(w, s)) continue;
      for (int i = 0; i < sites; ++i) {
        if ((s >> i) & 1U) continue;
        if (!t.at(w, s | (std::uint64_t{1} << i))) return Witness{w, s, static_cast<std::size_t>(i)};
      }
    }
    return std::nullopt;
  });
  v.sigma_increasing = !v.sigma_witness;

  const auto creates = first_witness(t, [&](std::uint64_t w) -> std::optional<Witness> {
    for (std::uint64_t s = 0; s < n_sigma; ++s) {
      if (t.at(w, s)) continue;
      for (int i = 0; i < sites; ++i) {
        if ((s >> i) & 1U) continue;
        if (t.at(w, s | (std::uint64_t{1} << i))) return Witness{w, s, static_cast<std::size_t>(i)};
      }
    }
    return std::nullopt;
  });
  v.sigma_decreasing = !creates;

  v.robust = verify_robust(t).robust;
  if (v.robust) {
    const auto corners = cell_corners(t.domain());
    v.omega_witness = first_witness(t, [&](std::uint64_t w) -> std::optional<Witness> {
      for (std::uint64_t s = 0; s < n_sigma; ++s) {
        for (std::size_t z = 0; z < corners.size(); ++z) {
          if ((w >> z) & 1U) continue;
          const bool at_nwse = t.at(w, s);
          const bool at_nesw = t.at(w | (std::uint64_t{1} << z), s);
          const CellType type = type_from_bits(corners[z], s);
          // A: NWSE -> NESW must not destroy; B: NESW -> NWSE must not destroy.
          if (type == CellType::A && at_nwse && !at_nesw) return Witness{w, s, z};
          if (type == CellType::B && at_nesw && !at_nwse) return Witness{w | (std::uint64_t{1} << z), s, z};
        }
      }
      return std::nullopt;
    });
    v.omega_increasing = !v.omega_witness;
  }
  return v;
}

IncreasingVerdict verify_increasing(const EventSpec& e) { return verify_increasing(tabulate(e)); }

// ---------------------------------------------------------------- FKG, Russo

namespace {

Rational margin_from_tables(const TruthTable& t1, const TruthTable& t2, const Probability& p) {
  const std::uint64_t n_sigma = std::uint64_t{1} << t1.num_sites();
  const auto both = sum_rows(t1, [&](std::uint64_t w, std::vector<std::uint64_t>& acc) {
    for (std::uint64_t s = 0; s < n_sigma; ++s)
      if (t1.at(w, s) && t2.at(w, s)) ++acc[std::popcount(s)];
  });
  const Rational p12 = bernstein_value(both, t1.num_cells(), p.exact());
  const Rational p1 = enumerate_prob(t1, "", p).probability;
  const Rational p2 = enumerate_prob(t2, "", p).probability;
  return p12 - p1 * p2;
}

void require_same_domain(const EventSpec& e1, const EventSpec& e2) {
  if (!(e1.domain() == e2.domain())) throw DomainError("FKG: events live on different domains");
}

}  // namespace

Rational fkg_margin(const EventSpec& e1, const EventSpec& e2, const Probability& p) {
  require_same_domain(e1, e2);
  return margin_from_tables(tabulate(e1), tabulate(e2), p);
}

Rational verify_fkg(const EventSpec& e1, const EventSpec& e2, const Probability& p) {
  require_same_domain(e1, e2);
  const TruthTable t1 = tabulate(e1);
  const TruthTable t2 = tabulate(e2);
  const std::pair<const TruthTable*, const EventSpec*> ops[] = {{&t1, &e1}, {&t2, &e2}};
  for (const auto& [t, e] : ops) {
    const IncreasingVerdict v = verify_increasing(*t);
    if (!v.robust) throw OracleRefusal("FKG hypothesis fails: '" + e->describe() + "' is not robust");
    if (!v.sigma_increasing) throw OracleRefusal("FKG hypothesis fails: '" + e->describe() + "' is not increasing in sigma");
    if (!v.omega_increasing.value_or(false))
      throw OracleRefusal("FKG hypothesis fails: '" + e->describe() + "' is not increasing in omega");
  }
  return margin_from_tables(t1, t2, p);
}

std::vector<std::uint64_t> pivotal_counts_by_red(const TruthTable& t) {
  const int sites = t.num_sites();
  const std::uint64_t n_sigma = std::uint64_t{1} << sites;
  return sum_rows(t, [&](std::uint64_t w, std::vector<std::uint64_t>& acc) {
    for (std::uint64_t s = 0; s < n_sigma; ++s) {
      const bool here = t.at(w, s);
      std::uint64_t piv = 0;
      for (int i = 0; i < sites; ++i) piv += (t.at(w, s ^ (std::uint64_t{1} << i)) != here);
      acc[std::popcount(s)] += piv;
    }
  });
}

RussoResult russo_exact(const EventSpec& e, const Probability& p) {
  const TruthTable t = tabulate(e);
  const IncreasingVerdict v = verify_increasing(t);
  if (!v.sigma_increasing && !v.sigma_decreasing) {
    throw OracleRefusal("Russo: '" + e.describe() + "' is not monotone in sigma");
  }
  RussoResult r;
  r.sign = v.sigma_increasing ? 1 : -1;
  const ExactResult exact = enumerate_prob(t, e.describe(), p);
  r.derivative = bernstein_derivative(exact.counts_by_red, t.num_cells(), p.exact());
  r.pivotal_expectation = bernstein_value(pivotal_counts_by_red(t), t.num_cells(), p.exact());
  return r;
}

}  // namespace diagperc
