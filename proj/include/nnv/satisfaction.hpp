#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nnv/ballot.hpp"
#include "nnv/winner.hpp"

namespace nnv {

enum class SatisfactionVariant {
  s,      // P_a - N_a + sum of losers' N
  s_bar,  // S minus the losers' positive votes
};

double satisfaction(const Tally& tally, std::size_t alpha);
double satisfaction_bar(const Tally& tally, std::size_t alpha);
double satisfaction_value(const Tally& tally, std::size_t alpha, SatisfactionVariant variant);

// s^i_alpha for every voter i, in ballot order.
std::vector<double> satisfaction_per_voter(const Election& election, std::size_t alpha);

// Every candidate's S (or S-bar) in O(m); `out` must hold one slot per candidate.
void satisfaction_column(std::span<const CandidateTotals> totals, SatisfactionVariant variant, std::span<double> out);
std::vector<double> satisfaction_column(const Tally& tally, SatisfactionVariant variant);

WinnerResult max_satisfaction_winner(const Tally& tally, SatisfactionVariant variant,
                                     TieRule rule = TieRule::report, bool qualified_only = true);

}  // namespace nnv
