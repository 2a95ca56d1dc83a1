// diagperc: command-line harness for the Monte Carlo experiments, the
// exhaustive oracle and the exploration tracer.
//
// Every run writes its data (CSV, JSON or text) to --out, or stdout, and a
// run manifest to <out>.manifest.json, or stderr. The data depends only on
// the command, its parameters and the seed, never on --workers.

#include <openssl/evp.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "diagperc/experiments.hpp"
#include "diagperc/exploration.hpp"
#include "diagperc/oracle.hpp"
#include "diagperc/pivotal.hpp"

#ifndef DIAGPERC_VERSION
#define DIAGPERC_VERSION "dev"
#endif

using namespace diagperc;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

// Column-ordered result table rendered as CSV or as a JSON array of rows.
using Value = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;

  void add(std::vector<Value> row) { rows.push_back(std::move(row)); }

  std::string csv() const {
    std::string out;
    if (columns.empty()) return out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ",";
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) out += g17(v);
              else if constexpr (std::is_same_v<T, std::string>) out += v;
              else if constexpr (std::is_same_v<T, bool>) out += v ? "true" : "false";
              else out += std::to_string(v);
            },
            row[i]);
      }
      out += "\n";
    }
    return out;
  }

  json to_json() const {
    json arr = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) std::visit([&](const auto& v) { obj[columns[i]] = v; }, row[i]);
      arr.push_back(std::move(obj));
    }
    return arr;
  }
};

// What a command produces: a table plus summary fields for JSON and the
// manifest, or a raw text body (traces, dumps, enumeration documents).
struct Result {
  Table table;
  json summary = json::object();
  std::optional<std::string> text;
  std::optional<Verdict> verdict;
};

struct Common {
  int cells_w = 0;
  int cells_h = 0;
  int n = 0;
  int aspect = 1;
  std::string p = "0.5";
  std::size_t reps = 10000;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* app, Common& c, bool domain = true) {
  if (domain) {
    app->add_option("--cells-w", c.cells_w, "Cells along x");
    app->add_option("--cells-h", c.cells_h, "Cells along y");
    app->add_option("--n", c.n, "Short side in cells (with --aspect)");
    app->add_option("--aspect", c.aspect, "Long side = aspect * n");
  }
  app->add_option("--p", c.p, "Red probability, decimal or a/b")->capture_default_str();
  app->add_option("--reps", c.reps, "Replicates")->capture_default_str();
  app->add_option("--seed", c.seed, "Seed")->capture_default_str();
  app->add_option("--workers", c.workers, "OpenMP threads (0 = runtime default)");
  app->add_option("--out", c.out, "Output path (stdout if omitted)");
  app->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

RectDomain domain_of(const Common& c) {
  if (c.n > 0) {
    if (c.cells_w || c.cells_h) throw UsageError("give either --n/--aspect or --cells-w/--cells-h");
    if (c.aspect < 1) throw UsageError("--aspect must be >= 1");
    return RectDomain(c.aspect * c.n, c.n);
  }
  if (c.cells_w < 1 || c.cells_h < 1) throw UsageError("domain needs --cells-w and --cells-h, or --n");
  return RectDomain(c.cells_w, c.cells_h);
}

double p_value(const Common& c) { return Probability::parse(c.p).value(); }

Color parse_color(const std::string& s) {
  if (s == "red") return Color::Red;
  if (s == "blue") return Color::Blue;
  throw UsageError("color must be red or blue");
}

Axis parse_axis(const std::string& s) {
  if (s == "lr" || s == "left-right") return Axis::LeftRight;
  if (s == "tb" || s == "top-bottom") return Axis::TopBottom;
  throw UsageError("axis must be lr or tb");
}

std::vector<RectDomain> parse_sizes(const std::vector<std::string>& sizes) {
  std::vector<RectDomain> out;
  for (const auto& s : sizes) {
    const auto x = s.find('x');
    if (x == std::string::npos) throw UsageError("size '" + s + "' is not WxH");
    try {
      out.emplace_back(std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1)));
    } catch (const std::logic_error&) {
      throw UsageError("size '" + s + "' is not WxH");
    }
  }
  return out;
}

void estimate_columns(Table& t, const std::vector<std::string>& lead) {
  t.columns = lead;
  for (const char* c : {"estimate", "stderr", "reps", "seed"}) t.columns.emplace_back(c);
}

std::vector<Value> with_estimate(std::vector<Value> lead, const Estimate& e) {
  lead.insert(lead.end(), {e.value, e.std_error, static_cast<std::int64_t>(e.reps), static_cast<std::int64_t>(e.seed)});
  return lead;
}

Result bound_result(const BoundReport& r) {
  Result out;
  out.table.columns = {"n", "aspect", "p", "estimate", "stderr", "lower", "upper", "threshold", "reps", "seed"};
  for (const auto& row : r.rows) {
    out.table.add({std::int64_t{row.n}, std::int64_t{r.aspect}, r.p, row.estimate.value, row.estimate.std_error,
                   row.lower, row.upper, r.threshold, static_cast<std::int64_t>(row.estimate.reps),
                   static_cast<std::int64_t>(row.estimate.seed)});
  }
  out.summary["quantity"] = r.quantity;
  out.verdict = r.verdict;
  return out;
}

std::string rational_text(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

EventSpec named_event(const std::string& name, const RectDomain& d) {
  if (name == "red-lr") return EventSpec::crossing(d, Color::Red, Axis::LeftRight);
  if (name == "red-tb") return EventSpec::crossing(d, Color::Red, Axis::TopBottom);
  if (name == "blue-lr") return EventSpec::crossing(d, Color::Blue, Axis::LeftRight);
  if (name == "blue-tb") return EventSpec::crossing(d, Color::Blue, Axis::TopBottom);
  if (name == "true") return EventSpec::constant(d, true);
  if (name == "anti-diagonal-path" || name == "diagonal-path") {
    if (!(d == RectDomain(3, 3))) throw UsageError("diagonal path events live on 3x3 cells");
    const EventPair pair = diagonal_paths_pair();
    return name == "anti-diagonal-path" ? pair.first : pair.second;
  }
  throw UsageError("unknown event '" + name + "'");
}

json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"omega", w->omega}, {"sigma", w->sigma}, {"index", w->index}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Site percolation on randomly triangulated Z^2: experiments, exact oracle, exploration"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DIAGPERC_VERSION);
  app.option_defaults()->always_capture_default();

  Common c;
  std::string color = "red", axis = "lr", method = "clusters", pair = "strip", adjacency = "triangulated";
  std::string event_name = "red-lr";
  std::vector<double> ps;
  std::vector<int> ns, ks;
  std::vector<std::string> sizes;
  std::optional<double> threshold;
  double delta0 = 0.01, epsilon = 0.05, tolerance = 0.01, low = 0.0, high = 1.0;
  std::size_t cap_factor = 100;
  std::uint64_t replicate = 0;
  bool mirrored = false, trace = false;

  auto* crossing = app.add_subcommand("crossing", "Crossing probability of one rectangle");
  add_common(crossing, c);
  crossing->add_option("--color", color)->capture_default_str();
  crossing->add_option("--axis", axis, "lr or tb")->capture_default_str();
  crossing->add_option("--method", method, "clusters or exploration")->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "Crossing probability over a grid of p and n");
  add_common(sweep_cmd, c, false);
  sweep_cmd->add_option("--ps", ps, "Values of p")->required();
  sweep_cmd->add_option("--ns", ns, "Short sides in cells")->required();
  sweep_cmd->add_option("--aspect", c.aspect)->capture_default_str();
  sweep_cmd->add_option("--color", color)->capture_default_str();
  sweep_cmd->add_option("--axis", axis)->capture_default_str();

  auto* rsw = app.add_subcommand("rsw", "Long-way red crossing of aspect*n x n against a threshold");
  add_common(rsw, c, false);
  rsw->add_option("--ns", ns)->capture_default_str();
  rsw->add_option("--aspect", c.aspect)->capture_default_str();
  rsw->add_option("--threshold", threshold, "Default 1/16 for aspect 2, else 0");

  auto* annulus = app.add_subcommand("annulus", "Red circuit in the 4n/6n annulus");
  add_common(annulus, c, false);
  annulus->add_option("--ns", ns);
  annulus->add_option("--delta0", delta0)->capture_default_str();

  auto* pivotal = app.add_subcommand("pivotal", "Conditional pivotal counts for the blue top-bottom crossing");
  add_common(pivotal, c, false);
  pivotal->add_option("--ns", ns);
  pivotal->add_option("--cap-factor", cap_factor)->capture_default_str();

  auto* decay = app.add_subcommand("decay", "Crossing decay off criticality");
  add_common(decay, c, false);
  decay->add_option("--epsilon", epsilon)->capture_default_str();
  decay->add_option("--ks", ks);
  decay->add_flag("--mirrored", mirrored, "Red left-right at p = 1/2 - epsilon");

  auto* pc = app.add_subcommand("pc", "Bisection estimate of the critical point");
  add_common(pc, c, false);
  pc->add_option("--n", c.n)->capture_default_str();
  pc->add_option("--tolerance", tolerance)->capture_default_str();
  pc->add_option("--low", low)->capture_default_str();
  pc->add_option("--high", high)->capture_default_str();

  auto* fkg = app.add_subcommand("fkg", "Positive association of event pairs");
  add_common(fkg, c, false);
  fkg->add_option("--pair", pair, "strip, identical, duality, catalogue or diagonal-paths")->capture_default_str();
  fkg->add_option("--n", c.n, "Scale of the Monte Carlo pair")->capture_default_str();

  auto* duality = app.add_subcommand("duality", "Red left-right XOR blue top-bottom on sampled configurations");
  add_common(duality, c, false);
  duality->add_option("--sizes", sizes, "Domains as WxH");
  duality->add_option("--adjacency", adjacency, "triangulated or square-only")->capture_default_str();

  auto* enumerate = app.add_subcommand("enumerate", "Exact probability and verdicts by exhaustive enumeration");
  add_common(enumerate, c);
  enumerate->add_option("--event", event_name,
                        "red-lr, red-tb, blue-lr, blue-tb, true, diagonal-path, anti-diagonal-path")
      ->capture_default_str();

  auto* explore_cmd = app.add_subcommand("explore", "Run the interface exploration on one replicate");
  add_common(explore_cmd, c);
  explore_cmd->add_option("--replicate", replicate)->capture_default_str();
  explore_cmd->add_flag("--trace", trace, "Emit the step trace instead of a summary");

  auto* sample = app.add_subcommand("sample", "Text dump of one sampled configuration");
  add_common(sample, c);
  sample->add_option("--replicate", replicate)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  if (c.workers > 0) set_worker_count(c.workers);

  json params = json::object();
  for (const CLI::Option* opt : cmd->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name() == "--version") continue;
    const auto values = opt->count() ? opt->results() : std::vector<std::string>{opt->get_default_str()};
    if (values.size() == 1 && values.front().empty()) continue;
    std::string key = opt->get_name();
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    if (key == "workers" || key == "out") continue;  // do not affect the data
    params[key] = values.size() == 1 ? json(values.front()) : json(values);
  }

  const auto start = std::chrono::steady_clock::now();
  Result result;
  std::string failure;
  int exit_code = kExitPass;
  try {
    if (name == "crossing") {
      const RectDomain d = domain_of(c);
      const CrossingMethod m = method == "exploration" ? CrossingMethod::Exploration
                               : method == "clusters"  ? CrossingMethod::Clusters
                                                       : throw UsageError("method must be clusters or exploration");
      const Estimate e =
          crossing_experiment(d, p_value(c), parse_color(color), parse_axis(axis), c.reps, c.seed, m);
      estimate_columns(result.table, {"cells_w", "cells_h", "p", "color", "axis"});
      result.table.add(with_estimate({std::int64_t{d.cells_w()}, std::int64_t{d.cells_h()}, p_value(c), color,
                                      to_string(parse_axis(axis))},
                                     e));
    } else if (name == "sweep") {
      estimate_columns(result.table, {"p", "n", "aspect"});
      for (const auto& row : diagperc::sweep(ps, ns, c.aspect, parse_color(color), parse_axis(axis), c.reps, c.seed))
        result.table.add(with_estimate({row.p, std::int64_t{row.n}, std::int64_t{row.aspect}}, row.estimate));
    } else if (name == "rsw") {
      if (ns.empty()) ns = {8, 16, 32};
      if (c.aspect == 1) c.aspect = 2;
      result = bound_result(rsw_check(ns, c.reps, c.seed, c.aspect, p_value(c), threshold));
    } else if (name == "annulus") {
      if (ns.empty()) ns = {1, 2, 4, 8};
      result = bound_result(annulus_check(ns, c.reps, c.seed, p_value(c), delta0));
    } else if (name == "pivotal") {
      if (ns.empty()) ns = {8, 16, 32, 64};
      const PivotalScalingReport r = pivotal_scaling(ns, p_value(c), c.reps, c.seed, cap_factor);
      result.table.columns = {"n", "mean", "stderr", "attempted", "accepted", "acceptance_rate", "reached_target"};
      for (const auto& row : r.rows)
        result.table.add({std::int64_t{row.n}, row.mean.value, row.mean.std_error,
                          static_cast<std::int64_t>(row.attempted), static_cast<std::int64_t>(row.accepted),
                          row.acceptance_rate, row.reached_target});
      result.summary["beta_hat"] = r.beta_hat ? json(*r.beta_hat) : json(nullptr);
      result.summary["strictly_increasing"] = r.strictly_increasing;
      result.verdict = r.verdict;
    } else if (name == "decay") {
      if (ks.empty()) ks = {3, 4, 5, 6};
      const DecayReport r = decay_check(epsilon, ks, c.reps, c.seed, mirrored);
      estimate_columns(result.table, {"k", "p"});
      for (const auto& row : r.rows) result.table.add(with_estimate({std::int64_t{row.k}, r.p}, row.estimate));
      result.summary["event"] = r.event;
      result.verdict = r.verdict;
    } else if (name == "pc") {
      if (c.n == 0) c.n = 32;
      const PcEstimate r = pc_estimate(c.n, c.reps, tolerance, c.seed, low, high);
      estimate_columns(result.table, {"p"});
      for (const auto& probe : r.probes) result.table.add(with_estimate({probe.p}, probe.estimate));
      result.summary["p_c"] = r.value;
      result.summary["low"] = r.low;
      result.summary["high"] = r.high;
    } else if (name == "fkg") {
      if (pair == "catalogue" || pair == "diagonal-paths") {
        const Probability p = Probability::parse(c.p);
        const std::vector<EventPair> pairs =
            pair == "catalogue" ? fkg_catalogue() : std::vector<EventPair>{diagonal_paths_pair()};
        result.table.columns = {"first", "second", "p", "margin", "margin_value", "hypotheses"};
        bool all_ok = true;
        for (const auto& pr : pairs) {
          std::string hyp = "verified";
          try {
            (void)verify_fkg(pr.first, pr.second, p);
          } catch (const OracleRefusal& r) {
            hyp = r.what();
          }
          const Rational m = fkg_margin(pr.first, pr.second, p);
          all_ok = all_ok && hyp == "verified" && m >= 0;
          result.table.add({pr.first.describe(), pr.second.describe(), p.text(), rational_text(m),
                            m.convert_to<double>(), hyp});
        }
        result.verdict = all_ok ? Verdict::Pass : Verdict::Fail;
      } else {
        const FkgPair which = pair == "strip"       ? FkgPair::StripOverlap
                              : pair == "identical" ? FkgPair::Identical
                              : pair == "duality"   ? FkgPair::Duality
                                                    : throw UsageError("unknown pair '" + pair + "'");
        if (c.n == 0) c.n = 16;
        const FkgReport r = fkg_mc_check(which, c.n, p_value(c), c.reps, c.seed);
        estimate_columns(result.table, {"first", "second"});
        result.table.add(with_estimate({r.first, r.second}, r.margin));
        result.verdict = r.verdict;
      }
    } else if (name == "duality") {
      const std::vector<RectDomain> ds =
          sizes.empty() ? std::vector<RectDomain>{RectDomain(4, 2), RectDomain(16, 8), RectDomain(64, 32)}
                        : parse_sizes(sizes);
      const Adjacency adj = adjacency == "square-only"    ? Adjacency::SquareOnly
                            : adjacency == "triangulated" ? Adjacency::Triangulated
                                                          : throw UsageError("unknown adjacency");
      const DualityReport r = duality_mass_check(ds, c.reps, c.seed, p_value(c), adj);
      result.table.columns = {"cells_w", "cells_h", "reps", "violations"};
      for (const auto& row : r.rows)
        result.table.add({std::int64_t{row.domain.cells_w()}, std::int64_t{row.domain.cells_h()},
                          static_cast<std::int64_t>(row.reps), static_cast<std::int64_t>(row.violations)});
      result.summary["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
      result.verdict = r.verdict;
    } else if (name == "enumerate") {
      const RectDomain d = domain_of(c);
      const EventSpec e = named_event(event_name, d);
      const Probability p = Probability::parse(c.p);
      const TruthTable table = tabulate(e);
      const ExactResult r = enumerate_prob(table, e.describe(), p);
      const RobustVerdict robust = verify_robust(table);
      const IncreasingVerdict inc = verify_increasing(table);
      json doc = json::object();
      doc["event"] = r.event;
      doc["domain"] = {{"cells_w", d.cells_w()}, {"cells_h", d.cells_h()}};
      doc["p"] = p.text();
      doc["probability"] = rational_text(r.probability);
      doc["probability_value"] = r.probability_value;
      doc["counts_by_red"] = r.counts_by_red;
      json coeffs = json::array();
      for (const auto& k : r.power_coefficients()) coeffs.push_back(rational_text(k));
      doc["power_coefficients"] = coeffs;
      doc["verdicts"] = {{"robust", robust.robust},
                         {"robust_witness", witness_json(robust.witness)},
                         {"sigma_increasing", inc.sigma_increasing},
                         {"sigma_decreasing", inc.sigma_decreasing},
                         {"omega_increasing", inc.omega_increasing ? json(*inc.omega_increasing) : json(nullptr)}};
      if (inc.sigma_increasing || inc.sigma_decreasing) {
        const RussoResult russo = russo_exact(e, p);
        doc["russo"] = {{"derivative", rational_text(russo.derivative)},
                        {"pivotal_expectation", rational_text(russo.pivotal_expectation)},
                        {"sign", russo.sign},
                        {"identity_holds", russo.identity_holds()}};
      }
      result.table.columns = {"k", "coefficient"};
      for (std::size_t k = 0; k < coeffs.size(); ++k)
        result.table.add({static_cast<std::int64_t>(k), coeffs[k].get<std::string>()});
      if (c.format == "json") result.text = doc.dump(2) + "\n";
      result.summary["probability"] = doc["probability"];
    } else if (name == "explore") {
      const RectDomain d = domain_of(c);
      const ExplorationResult r = explore(d, {c.seed, replicate}, p_value(c), trace);
      if (trace) result.text = format_trace(r);
      result.table.columns = {"cells_w", "cells_h", "p", "seed", "replicate", "exit_side", "step_count",
                              "revealed_sites", "revealed_cells"};
      result.table.add({std::int64_t{d.cells_w()}, std::int64_t{d.cells_h()}, p_value(c),
                        static_cast<std::int64_t>(c.seed), static_cast<std::int64_t>(replicate),
                        std::string(r.exit_side == ExitSide::Right ? "right" : "bottom"),
                        static_cast<std::int64_t>(r.step_count), static_cast<std::int64_t>(r.revealed_sites.size()),
                        static_cast<std::int64_t>(r.revealed_cells.size())});
    } else if (name == "sample") {
      const RectDomain d = domain_of(c);
      const Configuration cfg = sample_configuration({c.seed, replicate}, p_value(c), d);
      result.text = dump_config(cfg.omega, cfg.sigma);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OracleRefusal& e) {
    failure = std::string("refused: ") + e.what();
    result.verdict = Verdict::Fail;
  } catch (const EstimationFailure& e) {
    failure = std::string("estimation failure: ") + e.what() + " (" + std::to_string(e.attempts()) + " attempts)";
    result.verdict = Verdict::Fail;
  }
  const double duration = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string body;
  if (result.text) {
    body = *result.text;
  } else if (c.format == "json") {
    json doc = json::object();
    doc["command"] = name;
    doc["rows"] = result.table.to_json();
    for (auto it = result.summary.begin(); it != result.summary.end(); ++it) doc[it.key()] = it.value();
    if (result.verdict) doc["verdict"] = to_string(*result.verdict);
    if (!failure.empty()) doc["failure"] = failure;
    body = doc.dump(2) + "\n";
  } else {
    body = result.table.csv();
  }

  json manifest = json::object();
  manifest["command"] = name;
  manifest["params"] = params;
  manifest["seed"] = c.seed;
  manifest["version"] = DIAGPERC_VERSION;
  manifest["workers"] = worker_count();
  manifest["duration_s"] = duration;
  manifest["output_digest"] = "sha256:" + sha256_hex(body);
  if (result.verdict) manifest["verdict"] = to_string(*result.verdict);
  if (!failure.empty()) manifest["failure"] = failure;
  for (auto it = result.summary.begin(); it != result.summary.end(); ++it) manifest[it.key()] = it.value();

  // Write-then-rename so an interrupted run leaves no partial files.
  auto write_atomic = [](const std::string& path, const std::string& data) {
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      f << data;
      if (!f) throw std::runtime_error("cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
  };
  try {
    if (c.out.empty()) {
      std::cout << body << std::flush;
      std::cerr << manifest.dump() << "\n";
    } else {
      write_atomic(c.out, body);
      write_atomic(c.out + ".manifest.json", manifest.dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  if (!failure.empty()) std::cerr << failure << "\n";
  if (result.verdict) {
    std::cerr << "verdict: " << to_string(*result.verdict) << "\n";
    if (*result.verdict == Verdict::Fail) exit_code = kExitFail;
  }
  return exit_code;
}
