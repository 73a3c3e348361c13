#include "nnv/ballot.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nnv/errors.hpp"

namespace nnv {

namespace {

std::string norm_message(double actual, double norm, std::optional<std::size_t> ballot_index) {
  std::ostringstream os;
  os.precision(17);
  if (ballot_index) os << "ballot " << *ballot_index << ": ";
  os << "score magnitudes sum to " << actual << ", expected " << norm;
  return os.str();
}

}  // namespace

NormViolation::NormViolation(double actual_sum, double norm, std::optional<std::size_t> ballot_index)
    : Error(norm_message(actual_sum, norm, ballot_index)),
      actual_sum_(actual_sum),
      norm_(norm),
      ballot_index_(ballot_index) {}

TiedScores::TiedScores(std::size_t first, std::size_t second, std::optional<std::size_t> voter)
    : Error((voter ? "voter " + std::to_string(*voter) + ": " : std::string()) + "candidates " +
            std::to_string(first) + " and " + std::to_string(second) + " have equal scores"),
      first_(first),
      second_(second),
      voter_(voter) {}

double Ballot::magnitude_sum() const noexcept {
  double sum = 0.0;
  for (double s : scores_) sum += std::fabs(s);
  return sum;
}

BallotCheck validate_ballot(const Ballot& ballot, double norm, ValidationMode mode) {
  if (ballot.size() == 0) throw EmptyBallot();
  BallotCheck check;
  check.norm = norm;
  check.magnitude_sum = ballot.magnitude_sum();
  bool finite = true;
  for (double s : ballot.scores()) finite = finite && std::isfinite(s);
  check.within_norm = finite && std::fabs(check.magnitude_sum - norm) <= kNormTolerance;
  if (!check.within_norm && mode == ValidationMode::strict) throw NormViolation(check.magnitude_sum, norm);
  return check;
}

Election::Election(std::vector<std::string> names, std::vector<Ballot> ballots, double norm, ValidationMode mode)
    : ballots_(std::move(ballots)), norm_(norm), mode_(mode) {
  if (names.empty()) throw std::invalid_argument("election needs at least one candidate");
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("norm must be a positive number");

  std::set<std::string> seen;
  candidates_.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!seen.insert(names[i]).second) throw std::invalid_argument("duplicate candidate name '" + names[i] + "'");
    candidates_.push_back({i, std::move(names[i])});
  }

  for (std::size_t i = 0; i < ballots_.size(); ++i) {
    const Ballot& ballot = ballots_[i];
    if (ballot.size() != candidates_.size()) {
      throw std::invalid_argument("ballot " + std::to_string(i) + " has " + std::to_string(ballot.size()) +
                                  " scores for " + std::to_string(candidates_.size()) + " candidates");
    }
    BallotCheck check;
    try {
      check = validate_ballot(ballot, norm_, mode_);
    } catch (const NormViolation& e) {
      throw NormViolation(e.actual_sum(), norm_, i);
    }
    if (!check.within_norm) warnings_.push_back(norm_message(check.magnitude_sum, norm_, i));
  }
}

std::vector<std::string> Election::names() const {
  std::vector<std::string> out;
  out.reserve(candidates_.size());
  for (const auto& c : candidates_) out.push_back(c.name);
  return out;
}

std::optional<std::size_t> Election::find(const std::string& name) const {
  for (const auto& c : candidates_) {
    if (c.name == name) return c.index;
  }
  return std::nullopt;
}

Tally::Tally(std::vector<CandidateTotals> totals) : totals_(std::move(totals)) {
  for (const auto& t : totals_) {
    if (!(t.positive >= 0.0) || !(t.negative >= 0.0)) throw std::invalid_argument("tally totals must be non-negative");
  }
}

void Tally::add(const Ballot& ballot) {
  if (ballot.size() != totals_.size()) throw std::invalid_argument("ballot length does not match tally");
  for (std::size_t i = 0; i < totals_.size(); ++i) {
    totals_[i].positive += ballot.positive(i);
    totals_[i].negative += ballot.negative(i);
  }
}

Tally& Tally::operator+=(const Tally& other) {
  if (other.size() != totals_.size()) throw std::invalid_argument("tally sizes differ");
  for (std::size_t i = 0; i < totals_.size(); ++i) {
    totals_[i].positive += other.totals_[i].positive;
    totals_[i].negative += other.totals_[i].negative;
  }
  return *this;
}

Tally aggregate(std::span<const Ballot> ballots, std::size_t candidates) {
  Tally tally(candidates);
  for (const auto& b : ballots) tally.add(b);
  return tally;
}

Tally aggregate(const Election& election) { return aggregate(election.ballots(), election.candidate_count()); }

double popularity(double positive, double negative) noexcept { return positive - negative; }

double polarity(double positive, double negative) noexcept {
  if (positive > 0.0) return negative / positive;
  return negative > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

bool qualified(double positive, double negative) noexcept { return negative <= positive; }

}  // namespace nnv
