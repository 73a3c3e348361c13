#include "nnv/ranked.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nnv/errors.hpp"
#include "nnv/satisfaction.hpp"

namespace nnv {

RankBallot::RankBallot(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  std::vector<bool> seen(ranks_.size(), false);
  for (int r : ranks_) {
    if (r < 1 || static_cast<std::size_t>(r) > ranks_.size() || seen[r - 1]) {
      throw std::invalid_argument("ranks must be a permutation of 1..m");
    }
    seen[r - 1] = true;
  }
}

RankBallot to_ranks(const Ballot& ballot) {
  if (ballot.size() == 0) throw EmptyBallot();
  std::vector<std::size_t> order(ballot.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ballot[a] > ballot[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (ballot[order[k - 1]] == ballot[order[k]]) {
      throw TiedScores(std::min(order[k - 1], order[k]), std::max(order[k - 1], order[k]));
    }
  }
  std::vector<int> ranks(ballot.size());
  for (std::size_t k = 0; k < order.size(); ++k) ranks[order[k]] = static_cast<int>(k) + 1;
  return RankBallot(std::move(ranks));
}

std::vector<RankBallot> to_ranks(const Election& election) {
  std::vector<RankBallot> out;
  out.reserve(election.ballots().size());
  for (std::size_t i = 0; i < election.ballots().size(); ++i) {
    try {
      out.push_back(to_ranks(election.ballots()[i]));
    } catch (const TiedScores& e) {
      throw TiedScores(e.first(), e.second(), i);
    }
  }
  return out;
}

namespace {

void require_width(std::span<const RankBallot> ballots, std::size_t m) {
  if (m == 0) throw std::invalid_argument("need at least one candidate");
  for (const auto& b : ballots) {
    if (b.size() != m) throw std::invalid_argument("rank ballot length does not match candidate count");
  }
}

}  // namespace

BordaResult borda(std::span<const RankBallot> ballots, std::size_t m, TieRule rule) {
  require_width(ballots, m);
  BordaResult out;
  out.counts.assign(m, 0);
  for (const auto& b : ballots) {
    for (std::size_t mu = 0; mu < m; ++mu) out.counts[mu] += static_cast<int>(m) - b.rank(mu);
  }
  std::vector<double> values(out.counts.begin(), out.counts.end());
  out.result = select_max(std::move(values), std::vector<bool>(m, true), rule);
  return out;
}

CondorcetOutcome condorcet(std::span<const RankBallot> ballots, std::size_t m) {
  require_width(ballots, m);
  CondorcetOutcome out{std::nullopt, PairwiseMatrix(m)};
  for (const auto& b : ballots) {
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        if (x != y && b.prefers(x, y)) ++out.pairwise.at(x, y);
      }
    }
  }
  for (std::size_t x = 0; x < m; ++x) {
    bool beats_all = true;
    for (std::size_t y = 0; y < m && beats_all; ++y) {
      if (x != y && !out.pairwise.beats(x, y)) beats_all = false;
    }
    if (beats_all) {
      out.winner = x;
      break;
    }
  }
  return out;
}

IrvResult instant_runoff(std::span<const RankBallot> ballots, std::size_t m) {
  require_width(ballots, m);
  IrvResult out;
  std::vector<std::size_t> survivors(m);
  std::iota(survivors.begin(), survivors.end(), std::size_t{0});

  while (true) {
    std::vector<int> counts(m, 0);
    for (const auto& b : ballots) {
      std::size_t top = survivors.front();
      for (std::size_t s : survivors) {
        if (b.rank(s) < b.rank(top)) top = s;
      }
      ++counts[top];
    }

    IrvRound round;
    round.survivors = survivors;
    for (std::size_t s : survivors) round.first_counts.push_back(counts[s]);

    const int fewest = *std::min_element(round.first_counts.begin(), round.first_counts.end());
    const bool all_tied = std::all_of(round.first_counts.begin(), round.first_counts.end(),
                                      [&](int c) { return c == fewest; });
    if (survivors.size() == 1 || all_tied) {
      out.result.winners = survivors;
      out.result.values.assign(m, 0.0);
      for (std::size_t s : survivors) out.result.values[s] = counts[s];
      out.rounds.push_back(std::move(round));
      return out;
    }

    std::vector<std::size_t> next;
    for (std::size_t k = 0; k < survivors.size(); ++k) {
      if (round.first_counts[k] == fewest) {
        round.eliminated.push_back(survivors[k]);
      } else {
        next.push_back(survivors[k]);
      }
    }
    out.rounds.push_back(std::move(round));
    survivors = std::move(next);
  }
}

Election approval_to_nnv(const std::vector<std::vector<std::size_t>>& approvals, std::vector<std::string> names,
                         double norm) {
  const std::size_t m = names.size();
  if (m == 0) throw std::invalid_argument("need at least one candidate");
  const double magnitude = norm / static_cast<double>(m);
  std::vector<Ballot> ballots;
  ballots.reserve(approvals.size());
  for (const auto& approved : approvals) {
    std::vector<double> scores(m, -magnitude);
    for (std::size_t a : approved) {
      if (a >= m) throw UnknownCandidate(a);
      scores[a] = magnitude;
    }
    ballots.emplace_back(std::move(scores));
  }
  return Election(std::move(names), std::move(ballots), norm, ValidationMode::strict);
}

namespace {

MethodOutcome from_result(std::string method, bool ranked, const WinnerResult& r) {
  return {std::move(method), ranked, r.is_tie() ? OutcomeKind::tie : OutcomeKind::winner, r.winners};
}

}  // namespace

ComparisonReport compare_methods(const Election& election, std::span<const MetricKind> metrics) {
  const std::size_t m = election.candidate_count();
  const auto ranks = to_ranks(election);
  const Tally tally = aggregate(election);

  ComparisonReport report;
  report.rows.push_back(from_result("borda", true, borda(ranks, m).result));

  auto cond = condorcet(ranks, m);
  if (cond.winner) {
    report.rows.push_back({"condorcet", true, OutcomeKind::winner, {*cond.winner}});
  } else {
    report.rows.push_back({"condorcet", true, OutcomeKind::cycle, {}});
  }

  report.rows.push_back(from_result("irv", true, instant_runoff(ranks, m).result));

  for (const auto& metric : metrics) {
    report.rows.push_back(from_result(metric.label(), false, pick_winner(tally, metric)));
  }
  report.rows.push_back(from_result("S", false, max_satisfaction_winner(tally, SatisfactionVariant::s)));

  for (const auto& a : report.rows) {
    if (!a.ranked || a.kind == OutcomeKind::cycle) continue;
    for (const auto& b : report.rows) {
      if (!b.ranked && !winners_intersect(a.winners, b.winners)) report.divergent = true;
    }
  }
  return report;
}

}  // namespace nnv
