#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nnv {

inline constexpr double kDefaultNorm = 10.0;
inline constexpr double kNormTolerance = 1e-9;

enum class ValidationMode { strict, lenient };

struct Candidate {
  std::size_t index = 0;
  std::string name;
};

// One voter's signed scores, one entry per candidate. A positive entry is
// that voter's positive vote p for the candidate, a negative entry is -n.
class Ballot {
 public:
  Ballot() = default;
  explicit Ballot(std::vector<double> scores) : scores_(std::move(scores)) {}

  std::span<const double> scores() const noexcept { return scores_; }
  std::size_t size() const noexcept { return scores_.size(); }
  double operator[](std::size_t i) const { return scores_[i]; }

  double positive(std::size_t candidate) const { return scores_[candidate] > 0 ? scores_[candidate] : 0.0; }
  double negative(std::size_t candidate) const { return scores_[candidate] < 0 ? -scores_[candidate] : 0.0; }

  double magnitude_sum() const noexcept;

 private:
  std::vector<double> scores_;
};

struct BallotCheck {
  double magnitude_sum = 0.0;
  double norm = kDefaultNorm;
  bool within_norm = true;

  double deviation() const noexcept { return magnitude_sum - norm; }
};

// Strict mode throws NormViolation when the magnitudes miss the norm by more
// than kNormTolerance; lenient mode returns the report with within_norm unset.
BallotCheck validate_ballot(const Ballot& ballot, double norm = kDefaultNorm,
                            ValidationMode mode = ValidationMode::strict);

class Election {
 public:
  // Validates roster, ballot lengths and every ballot per `mode`.
  Election(std::vector<std::string> names, std::vector<Ballot> ballots, double norm = kDefaultNorm,
           ValidationMode mode = ValidationMode::strict);

  const std::vector<Candidate>& candidates() const noexcept { return candidates_; }
  const std::vector<Ballot>& ballots() const noexcept { return ballots_; }
  std::size_t candidate_count() const noexcept { return candidates_.size(); }
  double norm() const noexcept { return norm_; }
  ValidationMode mode() const noexcept { return mode_; }
  std::vector<std::string> names() const;
  std::optional<std::size_t> find(const std::string& name) const;

  // Lenient-mode norm deviations, one message per offending ballot.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  std::vector<Candidate> candidates_;
  std::vector<Ballot> ballots_;
  double norm_;
  ValidationMode mode_;
  std::vector<std::string> warnings_;
};

struct CandidateTotals {
  double positive = 0.0;
  double negative = 0.0;

  bool operator==(const CandidateTotals&) const = default;
};

// Aggregated positive (P) and negative (N) votes per candidate.
class Tally {
 public:
  Tally() = default;
  explicit Tally(std::size_t candidates) : totals_(candidates) {}
  explicit Tally(std::vector<CandidateTotals> totals);

  std::size_t size() const noexcept { return totals_.size(); }
  const CandidateTotals& operator[](std::size_t i) const { return totals_[i]; }
  std::span<const CandidateTotals> totals() const noexcept { return totals_; }

  void add(const Ballot& ballot);
  Tally& operator+=(const Tally& other);

  bool operator==(const Tally&) const = default;

 private:
  std::vector<CandidateTotals> totals_;
};

Tally aggregate(const Election& election);
Tally aggregate(std::span<const Ballot> ballots, std::size_t candidates);

double popularity(double positive, double negative) noexcept;
// N/P; 0 when P = N = 0 and +infinity when only P is zero.
double polarity(double positive, double negative) noexcept;
bool qualified(double positive, double negative) noexcept;

inline double popularity(const CandidateTotals& t) noexcept { return popularity(t.positive, t.negative); }
inline double polarity(const CandidateTotals& t) noexcept { return polarity(t.positive, t.negative); }
inline bool qualified(const CandidateTotals& t) noexcept { return qualified(t.positive, t.negative); }

}  // namespace nnv
