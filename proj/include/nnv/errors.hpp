#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace nnv {

// Base for every recoverable domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyBallot : public Error {
 public:
  EmptyBallot() : Error("ballot has no candidate scores") {}
};

// Strict-mode failure: the magnitudes of a ballot do not add up to the norm.
class NormViolation : public Error {
 public:
  NormViolation(double actual_sum, double norm, std::optional<std::size_t> ballot_index = std::nullopt);

  double actual_sum() const noexcept { return actual_sum_; }
  double norm() const noexcept { return norm_; }
  std::optional<std::size_t> ballot_index() const noexcept { return ballot_index_; }

 private:
  double actual_sum_;
  double norm_;
  std::optional<std::size_t> ballot_index_;
};

class NoQualifiedCandidate : public Error {
 public:
  NoQualifiedCandidate() : Error("no candidate has polarity <= 1") {}
};

class UnknownCandidate : public Error {
 public:
  explicit UnknownCandidate(std::size_t index)
      : Error("unknown candidate index " + std::to_string(index)), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Ranked conversion needs every score on a ballot to be distinct.
class TiedScores : public Error {
 public:
  TiedScores(std::size_t first, std::size_t second, std::optional<std::size_t> voter = std::nullopt);

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }
  std::optional<std::size_t> voter() const noexcept { return voter_; }

 private:
  std::size_t first_;
  std::size_t second_;
  std::optional<std::size_t> voter_;
};

class NonAdmissibleMetric : public Error {
 public:
  using Error::Error;
};

// Input document could not be parsed. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace nnv
