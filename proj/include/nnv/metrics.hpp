#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnv/ballot.hpp"
#include "nnv/winner.hpp"

namespace nnv {

// Weights of the rational metric (P - cN) / (1 + b N/P).
// c weighs negative votes against positive ones and may not exceed 1.
class MetricParams {
 public:
  MetricParams(double c, double b);

  double c() const noexcept { return c_; }
  double b() const noexcept { return b_; }

  bool operator==(const MetricParams&) const = default;

 private:
  double c_;
  double b_;
};

enum class MetricForm {
  rational,         // (P - cN) / (1 + b N/P)
  exp_polarity,     // (P - N) / e^(N/P)
  square_over_sum,  // (P - N)^2 / (P + N)
  power,            // (P - N)^(1 - N/P), not linear in the electorate size
};

struct MetricKind {
  MetricForm form = MetricForm::rational;
  MetricParams params{1.0, 1.0};

  static MetricKind rational(double c, double b) { return {MetricForm::rational, MetricParams(c, b)}; }
  static MetricKind alternate(MetricForm form) { return {form, MetricParams(1.0, 0.0)}; }

  // W_b^c style label, e.g. "W_1^1" or "W_0.5^0.5"; alternates use their flag name.
  std::string label() const;
  // Flag spelling accepted by parse_metric, e.g. "w:1,1" or "sqsum".
  std::string flag() const;

  bool operator==(const MetricKind&) const = default;
};

// Parses the metric flag grammar. `w:<b>,<c>` lists the subscript b first,
// the superscript c second, so "w:0,1" is the pure popularity metric W_0^1.
// Named alternates: "exp", "sqsum", "power". Throws std::invalid_argument.
MetricKind parse_metric(std::string_view text);

std::vector<MetricKind> default_metric_set();

// Rational metric. Degenerate cases: N = 0 gives P; P = N = 0 gives 0;
// P = 0 < N gives the P -> 0+ limit (0 when b > 0, -cN when b = 0).
double winning_metric(double positive, double negative, const MetricParams& params) noexcept;

struct AltMetricValue {
  double value = 0.0;
  std::optional<std::string> warning;  // set for the non-admissible power form
};

AltMetricValue alt_metric(double positive, double negative, MetricForm form);

double metric_value(double positive, double negative, const MetricKind& kind) noexcept;
inline double metric_value(const CandidateTotals& t, const MetricKind& kind) noexcept {
  return metric_value(t.positive, t.negative, kind);
}

// Whether `kind` may be used in an m-candidate election: the rational form
// must satisfy the no-over-penalization bound, the power form never does.
bool is_metric_admissible(const MetricKind& kind, std::size_t m);

// Argmax of the metric over qualified candidates. Disqualified candidates keep
// their diagnostic metric value in the result but are never selected.
WinnerResult pick_winner(const Tally& tally, const MetricKind& kind, TieRule rule = TieRule::report);

// ---------------------------------------------------------------------------
// No-over-penalization analysis. A voter giving the full norm to A must not
// be overridden by voters splitting -X on A and 10 - X over the others:
//   m - 2 >= [(m-1)c + b - 1] x - b x^2   for all x = X/10 in [0, 1].

// The closed form is exact except for rounding inside a squared term, hence
// the tiny slack; the scan evaluates a linear residue and needs more.
inline constexpr double kAdmissibilityTolerance = 1e-24;
inline constexpr double kScanTolerance = 1e-15;

// max over x in [0,1] of [(m-1)c + b - 1] x - b x^2, by vertex analysis.
double max_override_pressure(double c, double b, std::size_t m);
// Same maximum, by scanning x on a uniform grid of spacing `grid_step`.
double max_override_pressure_scan(double c, double b, std::size_t m, double grid_step);

bool is_admissible(double c, double b, std::size_t m);
bool is_admissible_scan(double c, double b, std::size_t m, double grid_step);

struct AdmissibilityCheck {
  bool closed_form = false;
  bool grid_scan = false;
  bool agree() const noexcept { return closed_form == grid_scan; }
};
AdmissibilityCheck check_admissibility(double c, double b, std::size_t m, double grid_step = 1e-4);

inline constexpr double kBoundaryTolerance = 1e-6;

// Largest admissible b for the given m and c, by bisection on is_admissible.
// Bisects to full double precision (well inside kBoundaryTolerance) and
// returns the admissible end of the final bracket.
double max_penalty_boundary(std::size_t m, double c);

struct BoundaryPoint {
  std::size_t m = 2;
  double c = 0.0;
  double b_max = 0.0;
};

// Samples c = 0, step, 2 step, ... up to and including 1.
std::vector<BoundaryPoint> max_penalty_curve(std::size_t m, double c_step = 0.01);

struct OverrideCheck {
  double a_metric = 0.0;
  double b_metric = 0.0;
  bool b_wins = false;
};

// Voter 1 gives +10 to A; voter 2 gives -X to A and 10 - X to B.
OverrideCheck two_voter_override_check(double c, double b, double x);

struct LinearityReport {
  bool pass = true;
  std::size_t samples = 0;
  double worst_relative_error = 0.0;
};

// metric(kP, kN) == k metric(P, N) for random qualified (P, N), k in {2, 10, 100}.
LinearityReport scale_linearity_check(const MetricKind& kind, std::size_t samples,
                                      std::uint64_t seed = 0x5eed);

}  // namespace nnv
