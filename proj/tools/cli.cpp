#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nnv/errors.hpp"
#include "nnv/io.hpp"
#include "nnv/metrics.hpp"
#include "nnv/montecarlo.hpp"
#include "nnv/ranked.hpp"
#include "nnv/satisfaction.hpp"

namespace nnv::cli {

namespace {

using nlohmann::json;

enum class Format { table, csv, json };

struct CommonOptions {
  std::string format;
  int digits = -1;  // -1: 2 decimals for tables, round-trip digits for csv
};

Format resolve_format(const std::string& flag) {
  std::string name = flag;
  if (name.empty()) {
    const char* env = std::getenv("NNV_FORMAT");
    name = env != nullptr ? env : "table";
  }
  if (name == "table") return Format::table;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown output format '" + name + "' (expected table, csv or json)");
}

int digits_for(Format format, int requested) {
  if (format == Format::json) return -1;
  if (requested >= 0) return requested;
  return format == Format::table ? 2 : -1;
}

std::vector<MetricKind> parse_metrics(const std::vector<std::string>& flags) {
  std::vector<MetricKind> out;
  for (const auto& f : flags) out.push_back(parse_metric(f));
  return out;
}

std::string join_names(const std::vector<std::size_t>& ids, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ", ";
    s += names[ids[i]];
  }
  return s;
}

std::string describe(const WinnerResult& r, const std::vector<std::string>& names) {
  if (r.is_tie()) return "tie {" + join_names(r.winners, names) + "}";
  return names[r.winner()];
}

json name_list(const std::vector<std::size_t>& ids, const std::vector<std::string>& names) {
  json arr = json::array();
  for (std::size_t id : ids) arr.push_back(names[id]);
  return arr;
}

void add_format_options(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--format", common.format, "Output format: table, csv or json (default $NNV_FORMAT or table)")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--digits", common.digits, "Decimals for table/csv numbers (json always prints 17 digits)")
      ->check(CLI::Range(0, 17));
}

// ---------------------------------------------------------------------------

struct TallyOptions {
  std::string file;
  std::vector<std::string> metrics;
  bool satisfaction = false;
  bool sbar = false;
  bool lenient = false;
  std::string tie_rule = "report";
  CommonOptions common;
};

int cmd_tally(const TallyOptions& opt, std::ostream& out, std::ostream& err) {
  const Format format = resolve_format(opt.common.format);
  const int digits = digits_for(format, opt.common.digits);
  const auto mode = opt.lenient ? ValidationMode::lenient : ValidationMode::strict;
  const ElectionDocument doc = load_election_file(opt.file, mode);
  if (doc.election) {
    for (const auto& w : doc.election->warnings()) err << "warning: " << w << '\n';
  }

  std::vector<MetricKind> metrics = parse_metrics(opt.metrics);
  if (metrics.empty()) metrics.push_back(MetricKind::rational(1.0, 1.0));
  const TieRule rule = opt.tie_rule == "lowest" ? TieRule::lowest_index : TieRule::report;

  TallyTable table{doc.names, doc.tally, {}};
  for (const auto& metric : metrics) {
    std::vector<double> values;
    for (const auto& t : doc.tally.totals()) values.push_back(metric_value(t, metric));
    table.extra.push_back({metric.label(), std::move(values)});
  }
  if (opt.satisfaction) table.extra.push_back({"S", satisfaction_column(doc.tally, SatisfactionVariant::s)});
  if (opt.sbar) table.extra.push_back({"S_bar", satisfaction_column(doc.tally, SatisfactionVariant::s_bar)});

  bool no_qualified = false;
  std::vector<std::pair<std::string, std::optional<WinnerResult>>> winners;
  for (const auto& metric : metrics) {
    try {
      winners.emplace_back(metric.label(), pick_winner(doc.tally, metric, rule));
    } catch (const NoQualifiedCandidate&) {
      winners.emplace_back(metric.label(), std::nullopt);
      no_qualified = true;
    }
  }
  std::vector<std::pair<std::string, SatisfactionVariant>> sat_variants;
  if (opt.satisfaction) sat_variants.emplace_back("S", SatisfactionVariant::s);
  if (opt.sbar) sat_variants.emplace_back("S_bar", SatisfactionVariant::s_bar);
  std::vector<std::pair<std::string, std::optional<WinnerResult>>> satisfied;
  for (const auto& [label, variant] : sat_variants) {
    try {
      satisfied.emplace_back(label, max_satisfaction_winner(doc.tally, variant, rule));
    } catch (const NoQualifiedCandidate&) {
      satisfied.emplace_back(label, std::nullopt);
    }
  }

  if (format == Format::json) {
    json doc_out;
    doc_out["candidates"] = to_json(table);
    json w = json::object();
    for (const auto& [label, r] : winners) {
      w[label] = r ? json{{"outcome", r->is_tie() ? "tie" : "winner"}, {"winners", name_list(r->winners, doc.names)}}
                   : json{{"outcome", "no_qualified_candidate"}, {"winners", json::array()}};
    }
    doc_out["winners"] = w;
    if (!satisfied.empty()) {
      json s = json::object();
      for (const auto& [label, r] : satisfied) {
        s[label] = r ? json{{"outcome", r->is_tie() ? "tie" : "winner"}, {"winners", name_list(r->winners, doc.names)}}
                     : json{{"outcome", "no_qualified_candidate"}, {"winners", json::array()}};
      }
      doc_out["max_satisfaction"] = s;
    }
    doc_out["norm"] = doc.norm;
    doc_out["warnings"] = doc.election ? json(doc.election->warnings()) : json::array();
    out << doc_out.dump(2) << '\n';
  } else {
    std::ostream& lines = format == Format::csv ? err : out;
    out << (format == Format::csv ? to_csv(table, digits) : to_text(table, digits));
    for (const auto& [label, r] : winners) {
      lines << "winner (" << label << "): " << (r ? describe(*r, doc.names) : "none, no qualified candidate") << '\n';
    }
    for (const auto& [label, r] : satisfied) {
      lines << "max satisfaction (" << label << "): " << (r ? describe(*r, doc.names) : "none") << '\n';
    }
  }

  if (no_qualified) {
    err << "error: no qualified candidate (every polarity exceeds 1)\n";
    return kNoQualifiedCandidate;
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct CompareOptions {
  std::string file;
  std::vector<std::string> metrics;
  bool lenient = false;
  CommonOptions common;
};

std::string outcome_name(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::winner:
      return "winner";
    case OutcomeKind::tie:
      return "tie";
    case OutcomeKind::cycle:
      return "cycle";
  }
  return "?";
}

int cmd_compare(const CompareOptions& opt, std::ostream& out, std::ostream& err) {
  const Format format = resolve_format(opt.common.format);
  const auto mode = opt.lenient ? ValidationMode::lenient : ValidationMode::strict;
  const ElectionDocument doc = load_election_file(opt.file, mode);
  if (!doc.election) throw std::invalid_argument("compare needs individual ballots, not aggregated tallies");
  for (const auto& w : doc.election->warnings()) err << "warning: " << w << '\n';

  std::vector<MetricKind> metrics = parse_metrics(opt.metrics);
  if (metrics.empty()) metrics = {MetricKind::rational(1.0, 0.0), MetricKind::rational(1.0, 1.0)};

  ComparisonReport report;
  try {
    report = compare_methods(*doc.election, metrics);
  } catch (const NoQualifiedCandidate&) {
    err << "error: no qualified candidate (every polarity exceeds 1)\n";
    return kNoQualifiedCandidate;
  }

  if (format == Format::json) {
    json methods = json::object();
    for (const auto& row : report.rows) {
      methods[row.method] = {{"outcome", outcome_name(row.kind)},
                             {"ranked", row.ranked},
                             {"winners", name_list(row.winners, doc.names)}};
    }
    out << json{{"methods", methods}, {"divergent", report.divergent}}.dump(2) << '\n';
  } else if (format == Format::csv) {
    out << "method,family,outcome,winners\n";
    for (const auto& row : report.rows) {
      out << row.method << ',' << (row.ranked ? "ranked" : "nnv") << ',' << outcome_name(row.kind) << ",\""
          << join_names(row.winners, doc.names) << "\"\n";
    }
    err << "divergent: " << (report.divergent ? "yes" : "no") << '\n';
  } else {
    std::size_t width = 6;
    for (const auto& row : report.rows) width = std::max(width, row.method.size());
    out << "method" << std::string(width - 6, ' ') << "  family  outcome  winners\n";
    for (const auto& row : report.rows) {
      std::string family = row.ranked ? "ranked" : "nnv";
      std::string kind = outcome_name(row.kind);
      out << row.method << std::string(width - row.method.size(), ' ') << "  " << family
          << std::string(6 - family.size(), ' ') << "  " << kind << std::string(7 - kind.size(), ' ') << "  "
          << (row.kind == OutcomeKind::cycle ? "-" : join_names(row.winners, doc.names)) << '\n';
    }
    out << "divergent: " << (report.divergent ? "yes (ranked and NNV winners differ)" : "no") << '\n';
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct SimulateOptions {
  std::vector<std::size_t> m_values{3, 4, 5, 8, 20};
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 42;
  std::vector<std::string> metrics;
  std::string variant = "s";
  std::string distribution = "uniform";
  bool force = false;
  bool all_candidates = false;
  int threads = 0;
  CommonOptions common;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  const Format format = resolve_format(opt.common.format);
  const int digits = digits_for(format, opt.common.digits);

  SimConfig base;
  base.trials = opt.trials;
  base.seed = opt.seed;
  base.distribution = Distribution::parse(opt.distribution);
  base.variant = opt.variant == "sbar" ? SatisfactionVariant::s_bar : SatisfactionVariant::s;
  base.qualified_only = !opt.all_candidates;
  base.threads = opt.threads;
  // The default set is the four-metric table, which includes W_2^1 at m = 3;
  // only explicitly requested metrics are held to the admissibility bound.
  const bool default_set = opt.metrics.empty();
  base.metrics = default_set ? default_metric_set() : parse_metrics(opt.metrics);
  base.allow_non_admissible = opt.force || default_set;

  std::vector<CorrelationReport> reports;
  for (std::size_t m : opt.m_values) {
    SimConfig config = base;
    config.m = m;
    if (default_set) {
      for (const auto& metric : config.metrics) {
        if (!is_metric_admissible(metric, m)) {
          err << "note: " << metric.label() << " exceeds the maximal-penalty bound for m = " << m << '\n';
        }
      }
    }
    reports.push_back(correlation_experiment(config));
  }

  const auto& metrics = base.metrics;
  if (format == Format::json) {
    json rows = json::array();
    for (const auto& r : reports) {
      json rates = json::array();
      for (const auto& rate : r.rates) {
        rates.push_back({{"metric", rate.metric.label()},
                         {"flag", rate.metric.flag()},
                         {"matches", rate.matches},
                         {"trials", rate.trials},
                         {"rate", rate.rate()}});
      }
      rows.push_back({{"m", r.config.m}, {"rates", rates}});
    }
    out << json{{"seed", opt.seed},
                {"trials", opt.trials},
                {"variant", opt.variant == "sbar" ? "sbar" : "s"},
                {"distribution", base.distribution.label()},
                {"qualified_only", base.qualified_only},
                {"reports", rows}}
               .dump(2)
        << '\n';
  } else if (format == Format::csv) {
    out << 'm';
    for (const auto& metric : metrics) out << ',' << metric.label();
    out << '\n';
    for (const auto& r : reports) {
      out << r.config.m;
      for (const auto& rate : r.rates) out << ',' << format_number(rate.rate(), digits);
      out << '\n';
    }
  } else {
    std::vector<std::string> header{"m"};
    for (const auto& metric : metrics) header.push_back(metric.label());
    std::vector<std::vector<std::string>> cells{header};
    for (const auto& r : reports) {
      std::vector<std::string> row{std::to_string(r.config.m)};
      for (const auto& rate : r.rates) row.push_back(format_number(100.0 * rate.rate(), digits) + "%");
      cells.push_back(row);
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : cells) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : cells) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "  " : "") << std::string(width[c] - row[c].size(), ' ') << row[c];
      }
      out << '\n';
    }
    out << "trials " << opt.trials << ", seed " << opt.seed << ", variant " << (opt.variant == "sbar" ? "S_bar" : "S")
        << ", distribution " << base.distribution.label() << '\n';
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct RegionOptions {
  std::vector<std::size_t> m_values{2, 3, 4, 5};
  double c_step = 0.01;
  CommonOptions common;
};

int cmd_region(const RegionOptions& opt, std::ostream& out, std::ostream&) {
  const Format format = resolve_format(opt.common.format);
  const int digits = digits_for(format, opt.common.digits);
  std::vector<BoundaryPoint> points;
  for (std::size_t m : opt.m_values) {
    auto curve = max_penalty_curve(m, opt.c_step);
    points.insert(points.end(), curve.begin(), curve.end());
  }

  if (format == Format::json) {
    json rows = json::array();
    for (const auto& p : points) rows.push_back({{"m", p.m}, {"c", p.c}, {"b_max", p.b_max}});
    out << rows.dump(2) << '\n';
  } else if (format == Format::csv) {
    out << "m,c,b_max\n";
    for (const auto& p : points) out << p.m << ',' << format_number(p.c, digits) << ',' << format_number(p.b_max, digits) << '\n';
  } else {
    out << " m       c   b_max\n";
    for (const auto& p : points) {
      std::string c = format_number(p.c, digits);
      std::string b = format_number(p.b_max, digits);
      std::string m = std::to_string(p.m);
      out << std::string(2 - std::min<std::size_t>(2, m.size()), ' ') << m << "  " << std::string(6 - std::min<std::size_t>(6, c.size()), ' ')
          << c << "  " << std::string(6 - std::min<std::size_t>(6, b.size()), ' ') << b << '\n';
    }
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct MonotonicityOptions {
  double c = 1.0;
  double b = 1.0;
  std::size_t m = 3;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 42;
  CommonOptions common;
};

json ballots_json(const Election& e) {
  json rows = json::array();
  for (const auto& b : e.ballots()) rows.push_back(std::vector<double>(b.scores().begin(), b.scores().end()));
  return rows;
}

int cmd_monotonicity(const MonotonicityOptions& opt, std::ostream& out, std::ostream&) {
  const Format format = resolve_format(opt.common.format);
  const MetricParams params(opt.c, opt.b);
  const auto found = monotonicity_search(params, opt.m, opt.trials, opt.seed);

  if (format == Format::json) {
    json doc{{"c", opt.c}, {"b", opt.b}, {"m", opt.m}, {"trials", opt.trials}, {"seed", opt.seed}};
    if (found) {
      const auto names = found->before.names();
      doc["counterexample"] = {{"trial", found->trial},
                               {"candidates", names},
                               {"ballots_before", ballots_json(found->before)},
                               {"ballots_after", ballots_json(found->after)},
                               {"ballot_index", found->ballot_index},
                               {"original_winner", names[found->original_winner]},
                               {"new_winner", names[found->rival]},
                               {"delta", found->delta},
                               {"verified", verify_counterexample(*found, params)}};
    } else {
      doc["counterexample"] = nullptr;
    }
    out << doc.dump(2) << '\n';
    return kSuccess;
  }

  if (!found) {
    out << "none found in " << opt.trials << " trials\n";
    return kSuccess;
  }
  const auto names = found->before.names();
  const int digits = digits_for(format, opt.common.digits);
  out << "counterexample at trial " << found->trial << " (verified: "
      << (verify_counterexample(*found, params) ? "yes" : "no") << ")\n";
  out << "ballot " << found->ballot_index << ": +" << format_number(found->delta, digits) << " to winner "
      << names[found->original_winner] << ", -" << format_number(found->delta, digits) << " negative on "
      << names[found->rival] << '\n';
  const MetricKind kind{MetricForm::rational, params};
  for (const auto* e : {&found->before, &found->after}) {
    const Tally t = aggregate(*e);
    out << (e == &found->before ? "before" : "after") << ":\n";
    for (std::size_t i = 0; i < e->ballots().size(); ++i) {
      out << "  voter " << i << ':';
      for (double s : e->ballots()[i].scores()) out << ' ' << format_number(s, digits);
      out << '\n';
    }
    out << "  " << kind.label() << ':';
    for (std::size_t i = 0; i < t.size(); ++i) out << ' ' << names[i] << '=' << format_number(metric_value(t[i], kind), digits);
    out << '\n';
  }
  out << "winner changes from " << names[found->original_winner] << " to " << names[found->rival] << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normed negative voting: tallies, ranked-method comparison, simulations, admissibility curves"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  TallyOptions tally;
  auto* tally_cmd = app.add_subcommand("tally", "Aggregate an election file and pick winners");
  tally_cmd->add_option("file", tally.file, "Election JSON file")->required();
  tally_cmd->add_option("--metric,--metrics", tally.metrics, "Metric: w:<b>,<c> (subscript b first), exp, sqsum, power");
  tally_cmd->add_flag("--satisfaction", tally.satisfaction, "Add the voter-satisfaction column S");
  tally_cmd->add_flag("--sbar", tally.sbar, "Add the S_bar column");
  tally_cmd->add_flag("--lenient", tally.lenient, "Accept ballots whose magnitudes miss the norm (warn only)");
  tally_cmd->add_option("--tie-rule", tally.tie_rule, "report or lowest")->check(CLI::IsMember({"report", "lowest"}));
  add_format_options(tally_cmd, tally.common);

  CompareOptions compare;
  auto* compare_cmd = app.add_subcommand("compare", "Compare ranked methods with NNV winners");
  compare_cmd->add_option("file", compare.file, "Election JSON file")->required();
  compare_cmd->add_option("--metric,--metrics", compare.metrics, "NNV metrics (default w:0,1 w:1,1)");
  compare_cmd->add_flag("--lenient", compare.lenient, "Accept ballots whose magnitudes miss the norm (warn only)");
  add_format_options(compare_cmd, compare.common);

  SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Correlate winning metrics with maximal voter satisfaction");
  simulate_cmd->add_option("--m", simulate.m_values, "Candidate counts")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  simulate_cmd->add_option("--trials", simulate.trials, "Elections per candidate count")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", simulate.seed, "Random seed");
  simulate_cmd->add_option("--metric,--metrics", simulate.metrics, "Metrics (default w:0,1 w:1,1 w:2,1 w:0.5,0.5)");
  simulate_cmd->add_option("--variant", simulate.variant, "Satisfaction: s or sbar")->check(CLI::IsMember({"s", "sbar"}));
  simulate_cmd->add_option("--dist", simulate.distribution, "uniform, uniform:<pmax>,<nmax> or int:<k>");
  simulate_cmd->add_flag("--force", simulate.force, "Run metrics that exceed the maximal-penalty bound");
  simulate_cmd->add_flag("--all-candidates", simulate.all_candidates, "Let disqualified candidates maximize satisfaction");
  simulate_cmd->add_option("--threads", simulate.threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  add_format_options(simulate_cmd, simulate.common);

  RegionOptions region;
  auto* region_cmd = app.add_subcommand("region", "Maximal-penalty boundary b_max(c) for each m");
  region_cmd->add_option("--m", region.m_values, "Candidate counts")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  region_cmd->add_option("--c-step", region.c_step, "Sampling step for c")->check(CLI::Range(1e-6, 1.0));
  add_format_options(region_cmd, region.common);

  MonotonicityOptions mono;
  auto* mono_cmd = app.add_subcommand("monotonicity", "Search for an individual monotonicity violation");
  mono_cmd->add_option("--c", mono.c, "Negative-vote weight c")->check(CLI::Range(0.0, 1.0));
  mono_cmd->add_option("--b", mono.b, "Polarity penalty b")->check(CLI::NonNegativeNumber);
  mono_cmd->add_option("--m", mono.m, "Candidate count")->check(CLI::Range(std::size_t{3}, std::size_t{1000}));
  mono_cmd->add_option("--trials", mono.trials, "Random elections to try");
  mono_cmd->add_option("--seed", mono.seed, "Random seed");
  add_format_options(mono_cmd, mono.common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*tally_cmd) return cmd_tally(tally, out, err);
    if (*compare_cmd) return cmd_compare(compare, out, err);
    if (*simulate_cmd) return cmd_simulate(simulate, out, err);
    if (*region_cmd) return cmd_region(region, out, err);
    if (*mono_cmd) return cmd_monotonicity(mono, out, err);
  } catch (const NoQualifiedCandidate& e) {
    err << "error: " << e.what() << '\n';
    return kNoQualifiedCandidate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace nnv::cli
