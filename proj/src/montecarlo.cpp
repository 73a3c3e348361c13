#include "nnv/montecarlo.hpp"

#include <omp.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>

#include "nnv/errors.hpp"

namespace nnv {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double parse_number(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

Distribution Distribution::uniform(double p_max, double n_max) {
  if (!(p_max > 0.0) || !(n_max > 0.0)) throw std::invalid_argument("uniform bounds must be positive");
  Distribution d;
  d.kind = Kind::uniform;
  d.p_max = p_max;
  d.n_max = n_max;
  return d;
}

Distribution Distribution::integer(int max_value) {
  if (max_value < 1) throw std::invalid_argument("integer distribution needs max >= 1");
  Distribution d;
  d.kind = Kind::integer;
  d.max_value = max_value;
  return d;
}

Distribution Distribution::parse(std::string_view text) {
  if (text == "uniform") return uniform();
  if (text.starts_with("uniform:")) {
    auto rest = text.substr(8);
    auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("expected uniform:<pmax>,<nmax>");
    return uniform(parse_number(rest.substr(0, comma)), parse_number(rest.substr(comma + 1)));
  }
  if (text.starts_with("int:")) {
    const double k = parse_number(text.substr(4));
    if (k != std::floor(k)) throw std::invalid_argument("int:<k> needs an integer");
    return integer(static_cast<int>(k));
  }
  throw std::invalid_argument("unknown distribution '" + std::string(text) + "'");
}

std::string Distribution::label() const {
  char buf[64];
  if (kind == Kind::integer) {
    std::snprintf(buf, sizeof buf, "int:%d", max_value);
  } else if (p_max == 1.0 && n_max == 1.0) {
    return "uniform";
  } else {
    std::snprintf(buf, sizeof buf, "uniform:%g,%g", p_max, n_max);
  }
  return buf;
}

RandomStream trial_stream(std::uint64_t seed, std::uint64_t trial) {
  return RandomStream(splitmix64(splitmix64(seed) ^ (trial * 0xd1b54a32d192ed03ULL)));
}

std::uint32_t draw_qualified_totals(RandomStream& rng, const Distribution& distribution,
                                    std::span<CandidateTotals> out) {
  std::uint32_t rejected = 0;
  while (true) {
    bool any_qualified = false;
    if (distribution.kind == Distribution::Kind::integer) {
      std::uniform_int_distribution<int> law(0, distribution.max_value);
      for (auto& t : out) {
        t.positive = law(rng);
        t.negative = law(rng);
        any_qualified = any_qualified || qualified(t);
      }
    } else {
      std::uniform_real_distribution<double> p_law(0.0, distribution.p_max);
      std::uniform_real_distribution<double> n_law(0.0, distribution.n_max);
      for (auto& t : out) {
        t.positive = p_law(rng);
        t.negative = n_law(rng);
        any_qualified = any_qualified || qualified(t);
      }
    }
    if (any_qualified) return rejected;
    if (++rejected > kMaxRedraws) throw std::logic_error("could not draw an election with a qualified candidate");
  }
}

TallyDraw random_tally(RandomStream& rng, std::size_t m, const Distribution& distribution) {
  if (m < 2) throw std::invalid_argument("random elections need m >= 2");
  std::vector<CandidateTotals> totals(m);
  const std::uint32_t rejected = draw_qualified_totals(rng, distribution, totals);
  return {Tally(std::move(totals)), rejected};
}

void check_config(const SimConfig& config) {
  if (config.m < 2) throw std::invalid_argument("simulation needs m >= 2");
  if (config.trials < 1) throw std::invalid_argument("simulation needs at least one trial");
  if (config.metrics.empty()) throw std::invalid_argument("simulation needs at least one metric");
  if (config.allow_non_admissible) return;
  for (const auto& metric : config.metrics) {
    if (!is_metric_admissible(metric, config.m)) {
      throw NonAdmissibleMetric("metric " + metric.label() + " over-penalizes negative votes for m = " +
                                std::to_string(config.m));
    }
  }
}

CorrelationReport correlation_experiment(const SimConfig& config) {
  check_config(config);
  const std::size_t m = config.m;
  const std::size_t metric_count = config.metrics.size();
  const auto trials = static_cast<std::int64_t>(config.trials);
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();

  std::vector<std::uint64_t> matches(metric_count, 0);
  std::exception_ptr failure;

#pragma omp parallel num_threads(threads)
  {
    std::vector<CandidateTotals> totals(m);
    std::vector<double> sat(m);
    std::vector<double> score(m);
    std::vector<std::uint64_t> local(metric_count, 0);

#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < trials; ++t) {
      try {
        RandomStream rng = trial_stream(config.seed, static_cast<std::uint64_t>(t));
        draw_qualified_totals(rng, config.distribution, totals);
        satisfaction_column(totals, config.variant, sat);

        double best_sat = -INFINITY;
        for (std::size_t a = 0; a < m; ++a) {
          if ((!config.qualified_only || qualified(totals[a])) && sat[a] > best_sat) best_sat = sat[a];
        }

        for (std::size_t k = 0; k < metric_count; ++k) {
          double best = -INFINITY;
          for (std::size_t a = 0; a < m; ++a) {
            score[a] = metric_value(totals[a], config.metrics[k]);
            if (qualified(totals[a]) && score[a] > best) best = score[a];
          }
          for (std::size_t a = 0; a < m; ++a) {
            if (!qualified(totals[a]) || score[a] < best - kTieTolerance) continue;
            if ((!config.qualified_only || qualified(totals[a])) && sat[a] >= best_sat - kTieTolerance) {
              ++local[k];
              break;
            }
          }
        }
      } catch (...) {
#pragma omp critical(nnv_mc_failure)
        if (!failure) failure = std::current_exception();
      }
    }

#pragma omp critical(nnv_mc_reduce)
    for (std::size_t k = 0; k < metric_count; ++k) matches[k] += local[k];
  }

  if (failure) std::rethrow_exception(failure);

  CorrelationReport report{config, {}};
  for (std::size_t k = 0; k < metric_count; ++k) {
    report.rates.push_back({config.metrics[k], matches[k], config.trials});
  }
  return report;
}

}  // namespace nnv
