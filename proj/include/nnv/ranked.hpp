#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nnv/ballot.hpp"
#include "nnv/metrics.hpp"
#include "nnv/winner.hpp"

namespace nnv {

// Complete strict ordering; rank(mu) == 1 is the voter's favourite.
class RankBallot {
 public:
  explicit RankBallot(std::vector<int> ranks);

  std::size_t size() const noexcept { return ranks_.size(); }
  int rank(std::size_t candidate) const { return ranks_[candidate]; }
  std::span<const int> ranks() const noexcept { return ranks_; }
  bool prefers(std::size_t a, std::size_t b) const { return ranks_[a] < ranks_[b]; }

  bool operator==(const RankBallot&) const = default;

 private:
  std::vector<int> ranks_;
};

// Higher score, better rank. Throws TiedScores when two scores coincide.
RankBallot to_ranks(const Ballot& ballot);
// Converts every ballot; TiedScores carries the offending voter index.
std::vector<RankBallot> to_ranks(const Election& election);

struct BordaResult {
  std::vector<int> counts;
  WinnerResult result;
};

BordaResult borda(std::span<const RankBallot> ballots, std::size_t m, TieRule rule = TieRule::report);

class PairwiseMatrix {
 public:
  explicit PairwiseMatrix(std::size_t m) : m_(m), counts_(m * m, 0) {}

  std::size_t size() const noexcept { return m_; }
  // Number of voters ranking `a` above `b`.
  int operator()(std::size_t a, std::size_t b) const { return counts_[a * m_ + b]; }
  int& at(std::size_t a, std::size_t b) { return counts_[a * m_ + b]; }
  bool beats(std::size_t a, std::size_t b) const { return (*this)(a, b) > (*this)(b, a); }

 private:
  std::size_t m_;
  std::vector<int> counts_;
};

struct CondorcetOutcome {
  std::optional<std::size_t> winner;  // empty when no candidate beats all others
  PairwiseMatrix pairwise;
};

CondorcetOutcome condorcet(std::span<const RankBallot> ballots, std::size_t m);

struct IrvRound {
  std::vector<std::size_t> survivors;
  std::vector<int> first_counts;  // aligned with `survivors`
  std::vector<std::size_t> eliminated;
};

struct IrvResult {
  WinnerResult result;
  std::vector<IrvRound> rounds;
};

// Each round removes every survivor tied at the fewest first preferences.
// When all survivors are tied the tie set is returned as the outcome.
IrvResult instant_runoff(std::span<const RankBallot> ballots, std::size_t m);

// Normed approval: every approved candidate gets +norm/m, every other -norm/m.
Election approval_to_nnv(const std::vector<std::vector<std::size_t>>& approvals,
                         std::vector<std::string> names, double norm = kDefaultNorm);

enum class OutcomeKind { winner, tie, cycle };

struct MethodOutcome {
  std::string method;
  bool ranked = false;
  OutcomeKind kind = OutcomeKind::winner;
  std::vector<std::size_t> winners;
};

struct ComparisonReport {
  std::vector<MethodOutcome> rows;
  // Set when some ranked method and some NNV method pick disjoint winner sets.
  bool divergent = false;
};

// Borda, Condorcet and IRV on the converted ranks, then each metric and the
// maximal-satisfaction (S) winner on the tally.
ComparisonReport compare_methods(const Election& election, std::span<const MetricKind> metrics);

}  // namespace nnv
