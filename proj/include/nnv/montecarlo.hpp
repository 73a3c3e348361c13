#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nnv/ballot.hpp"
#include "nnv/metrics.hpp"
#include "nnv/satisfaction.hpp"

namespace nnv {

// Sampling law for each candidate's (P, N) in a simulated election.
struct Distribution {
  enum class Kind { uniform, integer };

  Kind kind = Kind::uniform;
  double p_max = 1.0;  // uniform: P ~ U(0, p_max), N ~ U(0, n_max)
  double n_max = 1.0;
  int max_value = 10;  // integer: P, N uniform on {0, ..., max_value}

  static Distribution uniform(double p_max = 1.0, double n_max = 1.0);
  static Distribution integer(int max_value);

  // "uniform", "uniform:<pmax>,<nmax>" or "int:<k>"; throws std::invalid_argument.
  static Distribution parse(std::string_view text);
  std::string label() const;
};

inline constexpr std::uint32_t kMaxRedraws = 10000;

using RandomStream = std::mt19937_64;

// Independent stream for one trial, derived from the seed and the trial index
// so results never depend on which worker runs the trial.
RandomStream trial_stream(std::uint64_t seed, std::uint64_t trial);

// Draws raw (P, N) pairs into `out` until at least one candidate is qualified.
// Returns the number of rejected draws. Throws std::logic_error past kMaxRedraws.
std::uint32_t draw_qualified_totals(RandomStream& rng, const Distribution& distribution,
                                    std::span<CandidateTotals> out);

struct TallyDraw {
  Tally tally;
  std::uint32_t rejected = 0;
};

TallyDraw random_tally(RandomStream& rng, std::size_t m, const Distribution& distribution);

struct SimConfig {
  std::size_t m = 3;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 42;
  Distribution distribution;
  std::vector<MetricKind> metrics = default_metric_set();
  SatisfactionVariant variant = SatisfactionVariant::s;
  bool qualified_only = true;
  bool allow_non_admissible = false;
  int threads = 0;  // 0 leaves the OpenMP default
};

struct MetricRate {
  MetricKind metric;
  std::uint64_t matches = 0;
  std::uint64_t trials = 0;
  double rate() const noexcept { return trials == 0 ? 0.0 : static_cast<double>(matches) / static_cast<double>(trials); }
};

struct CorrelationReport {
  SimConfig config;
  std::vector<MetricRate> rates;
};

// Throws NonAdmissibleMetric unless every metric is admissible for config.m
// or config.allow_non_admissible is set.
void check_config(const SimConfig& config);

// OpenMP kernel. A trial matches when the metric's winner set and the
// satisfaction winner set intersect.
CorrelationReport correlation_experiment(const SimConfig& config);

// Serial reference built on pick_winner / max_satisfaction_winner; same
// streams and match rule, kept to cross-check the parallel kernel.
CorrelationReport correlation_experiment_reference(const SimConfig& config);

struct MonotonicityCounterexample {
  std::uint64_t trial = 0;
  Election before;
  Election after;
  std::size_t ballot_index = 0;
  std::size_t original_winner = 0;
  std::size_t rival = 0;
  double delta = 0.0;  // added to the winner's score and to the rival's negative score
};

// Random strict elections; on one ballot the winner's score is raised by delta
// and the rival's negative vote shrunk by delta. Returns the first instance
// in which the rival becomes the sole winner.
std::optional<MonotonicityCounterexample> monotonicity_search(const MetricParams& params, std::size_t m,
                                                              std::uint64_t trials, std::uint64_t seed);

// Recomputes both elections: the original winner wins `before` outright, the
// rival wins `after` outright, and the ballots differ only as described.
bool verify_counterexample(const MonotonicityCounterexample& ce, const MetricParams& params);

}  // namespace nnv
