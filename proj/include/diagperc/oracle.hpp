#pragma once

// Exhaustive enumeration of (omega, sigma) on small rectangles. Every
// quantity is derived from the event's truth table, with probabilities kept
// as exact rationals whenever p is rational.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagperc/event.hpp"
#include "diagperc/replicates.hpp"

namespace diagperc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Largest number of enumerated bits, #cells + #sites.
inline constexpr int kEnumerationBudgetBits = 26;

/// The oracle declined to compute something; the message says why.
class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public OracleRefusal {
 public:
  BudgetExceeded(int required_bits)
      : OracleRefusal("enumeration needs 2^" + std::to_string(required_bits) + " configurations, budget is 2^" +
                      std::to_string(kEnumerationBudgetBits)),
        required_bits_(required_bits) {}
  int required_bits() const { return required_bits_; }

 private:
  int required_bits_;
};

/// p as an exact rational when it has one, always as a double.
class Probability {
 public:
  Probability(double p);  // exact binary value of the double
  Probability(Rational p);
  /// Accepts "a/b", decimals such as "0.55" (read exactly), or "1".
  static Probability parse(const std::string& text);

  const Rational& exact() const { return exact_; }
  double value() const { return value_; }
  std::string text() const;

 private:
  Rational exact_;
  double value_;
};

/// Configuration index: bit i of the low #sites bits is site i (row-major,
/// 1 = red); bit j of the high bits is cell j (1 = NESW).
class TruthTable {
 public:
  TruthTable(RectDomain d, std::vector<std::uint8_t> bits);

  const RectDomain& domain() const { return domain_; }
  int num_sites() const { return sites_; }
  int num_cells() const { return cells_; }
  std::uint64_t size() const { return bits_.size(); }
  bool at(std::uint64_t omega, std::uint64_t sigma) const { return bits_[(omega << sites_) | sigma]; }

 private:
  RectDomain domain_;
  int sites_;
  int cells_;
  std::vector<std::uint8_t> bits_;
};

/// Throws BudgetExceeded when the domain is too large.
void check_budget(const RectDomain& d);

DiagonalConfig diagonals_from_bits(const RectDomain& d, std::uint64_t omega);
ColorConfig colors_from_bits(const RectDomain& d, std::uint64_t sigma);

TruthTable tabulate(const EventSpec& e, Execution ex = Execution::Parallel);

struct ExactResult {
  std::string event;
  RectDomain domain{1, 1};
  int num_sites = 0;
  int num_cells = 0;
  /// counts_by_red[r]: satisfying (omega, sigma) pairs with r red sites.
  std::vector<std::uint64_t> counts_by_red;
  Probability p{0.0};
  Rational probability;
  double probability_value = 0.0;

  std::uint64_t satisfying() const;
  std::uint64_t total() const { return std::uint64_t{1} << (num_sites + num_cells); }
  /// Coefficients c_k of P(p) = sum_k c_k p^k.
  std::vector<Rational> power_coefficients() const;
};

/// Annealed probability of the event, summed over every (omega, sigma).
ExactResult enumerate_prob(const EventSpec& e, const Probability& p);
ExactResult enumerate_prob(const TruthTable& t, const std::string& description, const Probability& p);

/// Evaluates 2^-cells * sum_r counts[r] p^r (1-p)^(sites-r) and its derivative in p.
Rational bernstein_value(const std::vector<std::uint64_t>& counts, int num_cells, const Rational& p);
Rational bernstein_derivative(const std::vector<std::uint64_t>& counts, int num_cells, const Rational& p);

struct Witness {
  std::uint64_t omega = 0;
  std::uint64_t sigma = 0;
  std::size_t index = 0;  // cell or site index, row-major
};

struct RobustVerdict {
  bool robust = true;
  std::optional<Witness> witness;  // cell index is a type-N cell whose flip changes the event
};

/// Checks that flipping any type-N cell never changes the event.
RobustVerdict verify_robust(const EventSpec& e);
RobustVerdict verify_robust(const TruthTable& t);

struct IncreasingVerdict {
  bool sigma_increasing = true;   // blue -> red never destroys the event
  bool sigma_decreasing = true;   // blue -> red never creates it
  bool robust = true;
  std::optional<bool> omega_increasing;  // checked only for robust events
  std::optional<Witness> sigma_witness;  // site flip breaking sigma-increase
  std::optional<Witness> omega_witness;  // cell flip breaking omega-increase

  bool increasing() const { return sigma_increasing && omega_increasing.value_or(false); }
};

IncreasingVerdict verify_increasing(const EventSpec& e);
IncreasingVerdict verify_increasing(const TruthTable& t);

/// P(e1 and e2) - P(e1) P(e2). Refuses unless both events are robust and
/// increasing in sigma and omega.
Rational verify_fkg(const EventSpec& e1, const EventSpec& e2, const Probability& p);

/// Same margin without the hypothesis checks.
Rational fkg_margin(const EventSpec& e1, const EventSpec& e2, const Probability& p);

struct RussoResult {
  Rational derivative;            // d/dp P(e)
  Rational pivotal_expectation;   // E_p[#pivotal sites]
  int sign = 1;                   // +1 increasing in sigma, -1 decreasing
  bool identity_holds() const { return derivative == sign * pivotal_expectation; }
};

/// Refuses events that are not monotone in sigma.
RussoResult russo_exact(const EventSpec& e, const Probability& p);

/// pivot_by_red[r]: total number of pivotal sites over configurations with r red sites.
std::vector<std::uint64_t> pivotal_counts_by_red(const TruthTable& t);

}  // namespace diagperc
