#include "nnv/montecarlo.hpp"

namespace nnv {

CorrelationReport correlation_experiment_reference(const SimConfig& config) {
  check_config(config);
  CorrelationReport report{config, {}};
  for (const auto& metric : config.metrics) report.rates.push_back({metric, 0, config.trials});

  for (std::uint64_t t = 0; t < config.trials; ++t) {
    RandomStream rng = trial_stream(config.seed, t);
    const TallyDraw draw = random_tally(rng, config.m, config.distribution);
    const WinnerResult satisfied =
        max_satisfaction_winner(draw.tally, config.variant, TieRule::report, config.qualified_only);
    for (auto& rate : report.rates) {
      const WinnerResult picked = pick_winner(draw.tally, rate.metric, TieRule::report);
      if (winners_intersect(picked.winners, satisfied.winners)) ++rate.matches;
    }
  }
  return report;
}

}  // namespace nnv
