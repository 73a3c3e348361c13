#include "nnv/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "nnv/errors.hpp"

namespace nnv {

namespace {

constexpr std::uint64_t kSearchSalt = 0x6d6f6e6f746f6e65ULL;
constexpr int kMinVoters = 2;
constexpr int kMaxVoters = 5;

std::vector<std::string> roster(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(m <= 26 ? std::string(1, static_cast<char>('A' + i)) : "C" + std::to_string(i));
  }
  return names;
}

Ballot random_ballot(RandomStream& rng, std::size_t m, double norm) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution negative(0.5);
  std::vector<double> scores(m);
  double total = 0.0;
  for (auto& s : scores) {
    s = -std::log1p(-unit(rng));
    total += s;
  }
  for (auto& s : scores) {
    s *= norm / total;
    if (negative(rng)) s = -s;
  }
  return Ballot(std::move(scores));
}

std::optional<std::size_t> sole_winner(const Election& election, const MetricKind& kind) {
  try {
    const WinnerResult r = pick_winner(aggregate(election), kind);
    if (r.is_tie()) return std::nullopt;
    return r.winner();
  } catch (const NoQualifiedCandidate&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<MonotonicityCounterexample> monotonicity_search(const MetricParams& params, std::size_t m,
                                                              std::uint64_t trials, std::uint64_t seed) {
  if (m < 3) throw std::invalid_argument("monotonicity search needs m >= 3");
  const MetricKind kind{MetricForm::rational, params};
  const auto names = roster(m);

  for (std::uint64_t t = 0; t < trials; ++t) {
    RandomStream rng = trial_stream(seed ^ kSearchSalt, t);
    std::uniform_int_distribution<int> voter_law(kMinVoters, kMaxVoters);
    const int voters = voter_law(rng);
    std::vector<Ballot> ballots;
    for (int v = 0; v < voters; ++v) ballots.push_back(random_ballot(rng, m, kDefaultNorm));
    const double fraction = 1.0 - std::generate_canonical<double, 53>(rng);

    const Election before(names, ballots);
    const auto winner = sole_winner(before, kind);
    if (!winner) continue;

    for (std::size_t j = 0; j < ballots.size(); ++j) {
      const Ballot& ballot = ballots[j];
      if (ballot[*winner] < 0.0) continue;
      for (std::size_t rival = 0; rival < m; ++rival) {
        if (rival == *winner || ballot[rival] >= 0.0) continue;

        const double delta = fraction * -ballot[rival];
        std::vector<double> scores(ballot.scores().begin(), ballot.scores().end());
        scores[*winner] += delta;
        scores[rival] += delta;
        std::vector<Ballot> perturbed = ballots;
        perturbed[j] = Ballot(std::move(scores));

        Election after(names, std::move(perturbed));
        if (sole_winner(after, kind) == rival) {
          return MonotonicityCounterexample{t, before, std::move(after), j, *winner, rival, delta};
        }
      }
    }
  }
  return std::nullopt;
}

bool verify_counterexample(const MonotonicityCounterexample& ce, const MetricParams& params) {
  const auto& a = ce.before.ballots();
  const auto& b = ce.after.ballots();
  const std::size_t m = ce.before.candidate_count();
  if (a.size() != b.size() || ce.after.candidate_count() != m || ce.ballot_index >= a.size()) return false;
  if (ce.original_winner >= m || ce.rival >= m || ce.original_winner == ce.rival || !(ce.delta > 0.0)) return false;

  try {
    for (const auto& ballot : a) validate_ballot(ballot, ce.before.norm());
    for (const auto& ballot : b) validate_ballot(ballot, ce.after.norm());
  } catch (const Error&) {
    return false;
  }

  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t mu = 0; mu < m; ++mu) {
      double expected = a[i][mu];
      if (i == ce.ballot_index && (mu == ce.original_winner || mu == ce.rival)) expected += ce.delta;
      if (std::fabs(b[i][mu] - expected) > kNormTolerance) return false;
    }
  }
  const Ballot& changed = a[ce.ballot_index];
  if (changed[ce.original_winner] < 0.0 || changed[ce.rival] >= 0.0 || ce.delta > -changed[ce.rival]) return false;

  const MetricKind kind{MetricForm::rational, params};
  return sole_winner(ce.before, kind) == ce.original_winner && sole_winner(ce.after, kind) == ce.rival;
}

}  // namespace nnv
