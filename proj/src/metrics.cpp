#include "nnv/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace nnv {

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return value;
}

}  // namespace

MetricParams::MetricParams(double c, double b) : c_(c), b_(b) {
  if (!(c >= 0.0) || !(b >= 0.0) || !std::isfinite(b)) throw std::invalid_argument("metric weights must be >= 0");
  if (c > 1.0) throw std::invalid_argument("c cannot exceed 1: negative votes may not outweigh positive ones");
}

std::string MetricKind::label() const {
  switch (form) {
    case MetricForm::rational:
      return "W_" + short_number(params.b()) + "^" + short_number(params.c());
    case MetricForm::exp_polarity:
      return "exp";
    case MetricForm::square_over_sum:
      return "sqsum";
    case MetricForm::power:
      return "power";
  }
  return "?";
}

std::string MetricKind::flag() const {
  if (form == MetricForm::rational) return "w:" + short_number(params.b()) + "," + short_number(params.c());
  return label();
}

MetricKind parse_metric(std::string_view text) {
  if (text == "exp") return MetricKind::alternate(MetricForm::exp_polarity);
  if (text == "sqsum") return MetricKind::alternate(MetricForm::square_over_sum);
  if (text == "power") return MetricKind::alternate(MetricForm::power);
  if (text.size() > 2 && (text[0] == 'w' || text[0] == 'W') && text[1] == ':') {
    std::string_view rest = text.substr(2);
    auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("metric 'w:<b>,<c>' needs two numbers");
    double b = parse_double(rest.substr(0, comma));
    double c = parse_double(rest.substr(comma + 1));
    return MetricKind::rational(c, b);
  }
  throw std::invalid_argument("unknown metric '" + std::string(text) + "' (expected w:<b>,<c>, exp, sqsum or power)");
}

std::vector<MetricKind> default_metric_set() {
  return {MetricKind::rational(1.0, 0.0), MetricKind::rational(1.0, 1.0), MetricKind::rational(1.0, 2.0),
          MetricKind::rational(0.5, 0.5)};
}

double winning_metric(double positive, double negative, const MetricParams& params) noexcept {
  if (negative == 0.0) return positive;
  if (positive > 0.0) return (positive - params.c() * negative) / (1.0 + params.b() * negative / positive);
  return params.b() > 0.0 ? 0.0 : -params.c() * negative;
}

AltMetricValue alt_metric(double positive, double negative, MetricForm form) {
  AltMetricValue out;
  if (form == MetricForm::power) out.warning = "(P-N)^(1-N/P) is not linear in the electorate size and is not admissible";
  if (positive == 0.0 && negative == 0.0) return out;

  const double net = positive - negative;
  switch (form) {
    case MetricForm::exp_polarity:
      out.value = positive > 0.0 ? net / std::exp(negative / positive) : 0.0;
      break;
    case MetricForm::square_over_sum:
      out.value = net * net / (positive + negative);
      break;
    case MetricForm::power:
      out.value = std::pow(net, 1.0 - negative / positive);
      break;
    case MetricForm::rational:
      out.value = winning_metric(positive, negative, MetricParams(1.0, 1.0));
      break;
  }
  return out;
}

double metric_value(double positive, double negative, const MetricKind& kind) noexcept {
  if (kind.form == MetricForm::rational) return winning_metric(positive, negative, kind.params);
  return alt_metric(positive, negative, kind.form).value;
}

bool is_metric_admissible(const MetricKind& kind, std::size_t m) {
  switch (kind.form) {
    case MetricForm::rational:
      return m < 2 || is_admissible(kind.params.c(), kind.params.b(), m);
    case MetricForm::power:
      return false;
    default:
      return true;
  }
}

WinnerResult pick_winner(const Tally& tally, const MetricKind& kind, TieRule rule) {
  std::vector<double> values(tally.size());
  std::vector<bool> eligible(tally.size());
  for (std::size_t i = 0; i < tally.size(); ++i) {
    values[i] = metric_value(tally[i], kind);
    eligible[i] = qualified(tally[i]);
  }
  return select_max(std::move(values), eligible, rule);
}

double max_override_pressure(double c, double b, std::size_t m) {
  const double slope = (static_cast<double>(m) - 1.0) * c + b - 1.0;
  if (b <= 0.0) return std::max(0.0, slope);
  const double vertex = slope / (2.0 * b);
  if (vertex <= 0.0) return 0.0;
  if (vertex >= 1.0) return (static_cast<double>(m) - 1.0) * c - 1.0;  // value at x = 1
  return slope * slope / (4.0 * b);
}

double max_override_pressure_scan(double c, double b, std::size_t m, double grid_step) {
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid step must be positive");
  // Same quadratic written as ((m-1)c - 1) x + b x (1 - x), exact at x = 1.
  const double linear = (static_cast<double>(m) - 1.0) * c - 1.0;
  const auto steps = static_cast<std::size_t>(std::ceil(1.0 / grid_step));
  double best = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double x = std::min(1.0, static_cast<double>(k) * grid_step);
    best = std::max(best, linear * x + b * x * (1.0 - x));
  }
  return best;
}

bool is_admissible(double c, double b, std::size_t m) {
  if (m < 2) throw std::invalid_argument("admissibility needs m >= 2");
  return max_override_pressure(c, b, m) <= static_cast<double>(m) - 2.0 + kAdmissibilityTolerance;
}

bool is_admissible_scan(double c, double b, std::size_t m, double grid_step) {
  if (m < 2) throw std::invalid_argument("admissibility needs m >= 2");
  return max_override_pressure_scan(c, b, m, grid_step) <= static_cast<double>(m) - 2.0 + kScanTolerance;
}

AdmissibilityCheck check_admissibility(double c, double b, std::size_t m, double grid_step) {
  return {is_admissible(c, b, m), is_admissible_scan(c, b, m, grid_step)};
}

double max_penalty_boundary(std::size_t m, double c) {
  if (m < 2) throw std::invalid_argument("boundary needs m >= 2");
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("c must lie in [0, 1]");
  if (!is_admissible(c, 0.0, m)) return 0.0;

  double lo = 0.0;
  double hi = 4.0 * static_cast<double>(m) + 4.0;
  while (is_admissible(c, hi, m)) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (is_admissible(c, mid, m) ? lo : hi) = mid;
  }
  return lo;
}

std::vector<BoundaryPoint> max_penalty_curve(std::size_t m, double c_step) {
  if (!(c_step > 0.0) || c_step > 1.0) throw std::invalid_argument("c step must lie in (0, 1]");
  std::vector<BoundaryPoint> curve;
  const auto steps = static_cast<std::size_t>(std::llround(std::ceil(1.0 / c_step - 1e-9)));
  for (std::size_t k = 0; k <= steps; ++k) {
    const double c = std::min(1.0, static_cast<double>(k) * c_step);
    curve.push_back({m, c, max_penalty_boundary(m, c)});
  }
  return curve;
}

OverrideCheck two_voter_override_check(double c, double b, double x) {
  if (!(x >= 0.0 && x <= 10.0)) throw std::invalid_argument("X must lie in [0, 10]");
  OverrideCheck out;
  out.a_metric = 10.0 * (10.0 - c * x) / (10.0 + b * x);
  out.b_metric = 10.0 - x;
  out.b_wins = out.b_metric > out.a_metric + kTieTolerance;
  return out;
}

LinearityReport scale_linearity_check(const MetricKind& kind, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> positive_law(0.5, 50.0);
  std::uniform_real_distribution<double> ratio_law(0.05, 0.95);

  LinearityReport report;
  report.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    const double p = positive_law(rng);
    const double n = p * ratio_law(rng);
    const double base = metric_value(p, n, kind);
    for (double k : {2.0, 10.0, 100.0}) {
      const double scaled = metric_value(k * p, k * n, kind);
      const double expected = k * base;
      const double err = std::fabs(scaled - expected) / std::max(std::fabs(expected), 1e-300);
      report.worst_relative_error = std::max(report.worst_relative_error, err);
    }
  }
  report.pass = report.worst_relative_error <= 1e-9;
  return report;
}

}  // namespace nnv
