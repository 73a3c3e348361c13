// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nnv/ballot.hpp"
#include "nnv/metrics.hpp"
#include "nnv/montecarlo.hpp"
#include "nnv/ranked.hpp"
#include "nnv/satisfaction.hpp"
#include "worked_elections.hpp"

namespace {

using namespace nnv;
using namespace nnv::testing;

constexpr double kPrinted = 0.01;  // values in the published tables carry two decimals
constexpr double kBoundary = 1e-6;
const std::vector<std::size_t> kSweep{3, 4, 5, 8, 20};

// Collects the first few failure messages of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(what);
  }
  void near(double actual, double expected, double tol, const std::string& what) {
    std::ostringstream s;
    s << what << ": got " << actual << ", want " << expected << " +- " << tol;
    expect(std::fabs(actual - expected) <= tol, s.str());
  }
  void note(const std::string& text) { info_.push_back(text); }

  bool ok() const { return failures_ == 0; }
  const std::vector<std::string>& notes() const { return notes_; }
  const std::vector<std::string>& info() const { return info_; }

 private:
  int failures_ = 0;
  std::vector<std::string> notes_;
  std::vector<std::string> info_;
};

std::vector<double> column(const Tally& t, const MetricKind& kind) {
  std::vector<double> v;
  for (const auto& c : t.totals()) v.push_back(metric_value(c, kind));
  return v;
}

void near_column(Check& check, const std::vector<double>& actual, const std::vector<double>& expected,
                 const std::string& label) {
  check.expect(actual.size() == expected.size(), label + ": wrong length");
  for (std::size_t i = 0; i < std::min(actual.size(), expected.size()); ++i) {
    check.near(actual[i], expected[i], kPrinted, label + "[" + std::to_string(i) + "]");
  }
}

using Ids = std::vector<std::size_t>;

// ---------------------------------------------------------------------------

void criterion_1(Check& check) {
  const Tally t = aggregate(first_table());
  const auto w11 = MetricKind::rational(1, 1);
  near_column(check, column(t, w11), {3.33, 4, 1}, "W_1^1");
  check.expect(pick_winner(t, w11).winners == Ids{B}, "winner is not B");
}

void criterion_2(Check& check) {
  const Tally t = election0();
  near_column(check, column(t, MetricKind::rational(1, 0)), {6.0, 4.0, 5.0, 3.0}, "W_0^1");
  near_column(check, column(t, MetricKind::rational(1, 1)), {4.12, 2.8, 4.28, 3.0}, "W_1^1");
  near_column(check, column(t, MetricKind::rational(1, 2)), {3.14, 2.15, 3.75, 3.0}, "W_2^1");
  near_column(check, column(t, MetricKind::rational(0.5, 0.5)), {6.92, 4.53, 5.08, 3.0}, "W_0.5^0.5");
  near_column(check, satisfaction_column(t, SatisfactionVariant::s), {10, 10, 13, 12}, "S");
  check.expect(max_satisfaction_winner(t, SatisfactionVariant::s).winners == Ids{C}, "S argmax is not C");
  check.expect(pick_winner(t, MetricKind::rational(1, 1)).winners == Ids{C}, "W_1^1 winner is not C");
  check.expect(pick_winner(t, MetricKind::rational(1, 2)).winners == Ids{C}, "W_2^1 winner is not C");
}

void criterion_3(Check& check) {
  const Election e = election1();
  const auto ranks = to_ranks(e);
  const auto b = borda(ranks, 4);
  check.expect(b.counts == std::vector<int>{5, 6, 3, 4}, "Borda counts differ from (5,6,3,4)");
  check.expect(b.result.winners == Ids{B}, "Borda winner is not B");
  check.expect(condorcet(ranks, 4).winner == std::optional<std::size_t>(B), "Condorcet winner is not B");

  const auto irv = instant_runoff(ranks, 4);
  check.expect(!irv.rounds.empty() && irv.rounds[0].eliminated == Ids{C}, "IRV does not eliminate C first");
  check.expect(irv.result.winners == (Ids{A, B, D}), "IRV does not end in the {A,B,D} tie");

  const auto dup = instant_runoff(to_ranks(election1_with_extra_voter3()), 4);
  check.expect(dup.result.winners == Ids{B}, "IRV with duplicated voter 3 is not B");

  const Tally t = aggregate(e);
  near_column(check, column(t, MetricKind::rational(1, 0)), {3, 6, 0, 4}, "W_0^1");
  near_column(check, column(t, MetricKind::rational(1, 1)), {1.84, 6, 0, 3.33}, "W_1^1");
  near_column(check, satisfaction_column(t, SatisfactionVariant::s), {6, 14, 6, 11}, "S");
  check.expect(pick_winner(t, MetricKind::rational(1, 0)).winners == Ids{B}, "W_0^1 winner is not B");
  check.expect(pick_winner(t, MetricKind::rational(1, 1)).winners == Ids{B}, "W_1^1 winner is not B");
  check.expect(max_satisfaction_winner(t, SatisfactionVariant::s).winners == Ids{B}, "S winner is not B");
}

void criterion_4(Check& check) {
  const Election e = election2();
  const auto ranks = to_ranks(e);
  const auto b = borda(ranks, 4);
  check.expect(b.counts == std::vector<int>{5, 6, 3, 4}, "Borda counts differ from (5,6,3,4)");
  check.expect(b.result.winners == Ids{B}, "Borda winner is not B");
  check.expect(condorcet(ranks, 4).winner == std::optional<std::size_t>(B), "Condorcet winner is not B");

  const Tally t = aggregate(e);
  near_column(check, column(t, MetricKind::rational(1, 0)), {7, 6, 0, 8}, "W_0^1");
  near_column(check, column(t, MetricKind::rational(1, 1)), {6.2, 6, 0, 7.2}, "W_1^1");
  near_column(check, satisfaction_column(t, SatisfactionVariant::s), {10, 10, 2, 11}, "S");
  check.expect(pick_winner(t, MetricKind::rational(1, 0)).winners == Ids{D}, "W_0^1 winner is not D");
  check.expect(pick_winner(t, MetricKind::rational(1, 1)).winners == Ids{D}, "W_1^1 winner is not D");
  check.expect(max_satisfaction_winner(t, SatisfactionVariant::s).winners == Ids{D}, "S winner is not D");

  const std::vector<MetricKind> metrics{MetricKind::rational(1, 0), MetricKind::rational(1, 1)};
  check.expect(compare_methods(e, metrics).divergent, "divergence flag not raised");
}

void criterion_5(Check& check) {
  // m = 2: admissible exactly when c + b <= 1.
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 200; ++j) {
      const double c = i / 100.0;
      const double b = j / 100.0;
      if (std::fabs(c + b - 1.0) <= kBoundary) continue;
      check.expect(is_admissible(c, b, 2) == (c + b < 1.0),
                   "m=2 line disagrees at c=" + std::to_string(c) + " b=" + std::to_string(b));
    }
    const double c = i / 100.0;
    check.near(max_penalty_boundary(2, c), 1.0 - c, kBoundary, "b_max(m=2, c=" + std::to_string(c) + ")");
  }

  for (std::size_t m = 3; m <= 100; ++m) {
    check.expect(is_admissible(1, 1, m), "(c=1,b=1) rejected for m=" + std::to_string(m));
  }
  for (std::size_t m = 3; m <= 20; ++m) {
    const double bound = static_cast<double>(m) - 2.0;
    check.near(max_penalty_boundary(m, 1.0), bound, kBoundary, "b_max(m=" + std::to_string(m) + ", c=1)");
    check.expect(is_admissible(1.0, bound - kBoundary, m) && !is_admissible(1.0, bound + kBoundary, m),
                 "b <= m-2 threshold misplaced for m=" + std::to_string(m));
  }

  int checked = 0;
  for (std::size_t m = 2; m <= 5; ++m) {
    const double b_top = 4.0 * static_cast<double>(m);
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j < 100; ++j) {
        const double c = i / 99.0;
        const double b = b_top * j / 99.0;
        const auto r = check_admissibility(c, b, m, 1e-4);
        check.expect(r.agree(), "closed form vs scan at m=" + std::to_string(m) + " c=" + std::to_string(c) +
                                    " b=" + std::to_string(b));
        ++checked;
      }
    }
  }
  check.note(std::to_string(checked) + " grid points agree");
}

void criterion_6(Check& check) {
  int pairs = 0;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; i + j <= 20; ++j) {
      const double c = i / 20.0;
      const double b = j / 20.0;
      if (!is_admissible(c, b, 2)) continue;
      ++pairs;
      for (int k = 0; k <= 1000; ++k) {
        const double x = k / 100.0;
        check.expect(!two_voter_override_check(c, b, x).b_wins,
                     "B wins at c=" + std::to_string(c) + " b=" + std::to_string(b) + " X=" + std::to_string(x));
      }
    }
  }
  check.expect(pairs > 200, "too few admissible pairs sampled");
  check.note(std::to_string(pairs) + " admissible (c,b) pairs");
}

void criterion_7(Check& check) {
  constexpr std::size_t kSamples = 2000;
  for (const auto& kind : {MetricKind::rational(1, 1), MetricKind::rational(1, 0), MetricKind::rational(0.5, 0.5),
                           MetricKind::rational(1, 2), MetricKind::alternate(MetricForm::exp_polarity),
                           MetricKind::alternate(MetricForm::square_over_sum)}) {
    check.expect(scale_linearity_check(kind, kSamples).pass, kind.label() + " fails scale linearity");
  }
  const auto power = scale_linearity_check(MetricKind::alternate(MetricForm::power), kSamples);
  check.expect(!power.pass, "power form passes scale linearity");
  std::ostringstream s;
  s << "power form worst relative error " << power.worst_relative_error;
  check.note(s.str());
}

void criterion_8(Check& check) {
  for (std::uint64_t seed : {1ull, 42ull, 20261016ull}) {
    for (std::size_t m : kSweep) {
      SimConfig config;
      config.m = m;
      config.trials = 100000;
      config.seed = seed;
      config.metrics = {MetricKind::rational(1, 0)};
      config.variant = SatisfactionVariant::s_bar;
      const auto r = correlation_experiment(config);
      check.expect(r.rates[0].matches == r.rates[0].trials,
                   "S_bar rate below 1 at m=" + std::to_string(m) + " seed=" + std::to_string(seed));
    }
  }
}

std::vector<CorrelationReport> sweep(std::uint64_t seed) {
  std::vector<CorrelationReport> out;
  for (std::size_t m : kSweep) {
    SimConfig config;
    config.m = m;
    config.trials = 1000000;
    config.seed = seed;
    config.metrics = default_metric_set();  // W_0^1, W_1^1, W_2^1, W_0.5^0.5
    config.variant = SatisfactionVariant::s;
    config.allow_non_admissible = true;  // W_2^1 exceeds the bound at m = 3
    out.push_back(correlation_experiment(config));
  }
  return out;
}

std::vector<CorrelationReport> baseline;

void criterion_9(Check& check) {
  baseline = sweep(42);
  enum { w01, w11, w21, whalf };
  for (const auto& r : baseline) {
    std::ostringstream s;
    s << "m=" << r.config.m << ':';
    for (const auto& rate : r.rates) s << ' ' << rate.metric.label() << '=' << rate.rate();
    check.note(s.str());
    for (int k : {w01, w11, w21}) {
      check.expect(r.rates[whalf].rate() < r.rates[k].rate(),
                   "W_0.5^0.5 not strictly lowest at m=" + std::to_string(r.config.m));
    }
  }
  const auto& m3 = baseline.front();
  const auto& m20 = baseline.back();
  check.expect(m20.rates[w21].rate() > m3.rates[w21].rate(), "W_2^1 does not improve from m=3 to m=20");
  check.expect(m20.rates[w01].rate() < m3.rates[w01].rate(), "W_0^1 does not fall from m=3 to m=20");
}

void criterion_10(Check& check) {
  check.expect(!baseline.empty(), "criterion 9 did not produce a baseline");
  const auto again = sweep(42);
  const auto other = sweep(7);
  double worst = 0.0;
  for (std::size_t i = 0; i < baseline.size() && i < again.size(); ++i) {
    for (std::size_t k = 0; k < baseline[i].rates.size(); ++k) {
      const auto& a = baseline[i].rates[k];
      check.expect(a.matches == again[i].rates[k].matches && a.trials == again[i].rates[k].trials,
                   "same-seed rerun differs at m=" + std::to_string(baseline[i].config.m));
      const double diff = std::fabs(a.rate() - other[i].rates[k].rate());
      worst = std::max(worst, diff);
      check.expect(diff < 0.005, "seed change moves " + a.metric.label() + " by " + std::to_string(diff));
    }
  }
  check.note("largest cross-seed difference " + std::to_string(worst));
}

void criterion_11(Check& check) {
  const MetricParams params(1, 1);
  const auto found = monotonicity_search(params, 3, 1000000, 42);
  check.expect(found.has_value(), "no counterexample in 10^6 trials");
  if (!found) return;
  check.expect(verify_counterexample(*found, params), "counterexample does not re-verify");
  check.note("found at trial " + std::to_string(found->trial) + ", delta " + std::to_string(found->delta));
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<void(Check&)> body;
};

}  // namespace

int main() {
  // Budgets: worked examples under 1 s, boundary checks under 10 s, the
  // simulation sweep under 60 s per sweep (criterion 10 runs two sweeps).
  const std::vector<Criterion> criteria{
      {1, "first worked table", 1, criterion_1},
      {2, "Election-0 columns and winners", 1, criterion_2},
      {3, "Election-1 ranked methods and NNV", 1, criterion_3},
      {4, "Election-2 divergence", 1, criterion_4},
      {5, "admissibility region", 10, criterion_5},
      {6, "two-voter override", 10, criterion_6},
      {7, "scale linearity", 10, criterion_7},
      {8, "S_bar exact match for W_0^1", 60, criterion_8},
      {9, "simulation trends, 10^6 trials", 60, criterion_9},
      {10, "determinism across runs and seeds", 120, criterion_10},
      {11, "monotonicity counterexample", 60, criterion_11},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.expect(seconds < c.budget_seconds, "runtime " + std::to_string(seconds) + " s over budget");

    const bool ok = check.ok();
    failed += ok ? 0 : 1;
    std::printf("criterion %2d: %s  %s (%.2f s)\n", c.id, ok ? "PASS" : "FAIL", c.title, seconds);
    for (const auto& line : check.info()) std::printf("    %s\n", line.c_str());
    for (const auto& line : check.notes()) std::printf("    ! %s\n", line.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
