#include "nnv/satisfaction.hpp"

#include "nnv/errors.hpp"

namespace nnv {

namespace {

void require_candidate(std::size_t m, std::size_t alpha) {
  if (alpha >= m) throw UnknownCandidate(alpha);
}

}  // namespace

double satisfaction(const Tally& tally, std::size_t alpha) {
  require_candidate(tally.size(), alpha);
  double losers_negative = 0.0;
  for (std::size_t mu = 0; mu < tally.size(); ++mu) {
    if (mu != alpha) losers_negative += tally[mu].negative;
  }
  return tally[alpha].positive - tally[alpha].negative + losers_negative;
}

double satisfaction_bar(const Tally& tally, std::size_t alpha) {
  require_candidate(tally.size(), alpha);
  double losers_positive = 0.0;
  for (std::size_t mu = 0; mu < tally.size(); ++mu) {
    if (mu != alpha) losers_positive += tally[mu].positive;
  }
  return satisfaction(tally, alpha) - losers_positive;
}

double satisfaction_value(const Tally& tally, std::size_t alpha, SatisfactionVariant variant) {
  return variant == SatisfactionVariant::s ? satisfaction(tally, alpha) : satisfaction_bar(tally, alpha);
}

std::vector<double> satisfaction_per_voter(const Election& election, std::size_t alpha) {
  require_candidate(election.candidate_count(), alpha);
  std::vector<double> out;
  out.reserve(election.ballots().size());
  for (const Ballot& ballot : election.ballots()) {
    double s = ballot.positive(alpha) - ballot.negative(alpha);
    for (std::size_t mu = 0; mu < ballot.size(); ++mu) {
      if (mu != alpha) s += ballot.negative(mu);
    }
    out.push_back(s);
  }
  return out;
}

void satisfaction_column(std::span<const CandidateTotals> totals, SatisfactionVariant variant, std::span<double> out) {
  double negatives = 0.0;
  double positives = 0.0;
  for (const auto& t : totals) {
    negatives += t.negative;
    positives += t.positive;
  }
  for (std::size_t a = 0; a < totals.size(); ++a) {
    const auto& t = totals[a];
    double s = t.positive - t.negative + (negatives - t.negative);
    if (variant == SatisfactionVariant::s_bar) s -= positives - t.positive;
    out[a] = s;
  }
}

std::vector<double> satisfaction_column(const Tally& tally, SatisfactionVariant variant) {
  std::vector<double> out(tally.size());
  satisfaction_column(tally.totals(), variant, out);
  return out;
}

WinnerResult max_satisfaction_winner(const Tally& tally, SatisfactionVariant variant, TieRule rule,
                                     bool qualified_only) {
  std::vector<double> values = satisfaction_column(tally, variant);
  std::vector<bool> eligible(tally.size(), true);
  for (std::size_t a = 0; a < tally.size(); ++a) {
    if (qualified_only) eligible[a] = qualified(tally[a]);
  }
  return select_max(std::move(values), eligible, rule);
}

}  // namespace nnv
