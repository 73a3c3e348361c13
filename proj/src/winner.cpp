#include "nnv/winner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nnv/errors.hpp"

namespace nnv {

bool WinnerResult::contains(std::size_t candidate) const {
  return std::find(winners.begin(), winners.end(), candidate) != winners.end();
}

WinnerResult select_max(std::vector<double> values, const std::vector<bool>& eligible, TieRule rule) {
  if (values.size() != eligible.size()) throw std::invalid_argument("values and eligibility differ in length");

  WinnerResult result;
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!eligible[i]) {
      result.disqualified.push_back(i);
      continue;
    }
    if (std::isnan(values[i])) continue;
    if (!any || values[i] > best) best = values[i];
    any = true;
  }
  if (!any && result.disqualified.size() == values.size()) throw NoQualifiedCandidate();

  for (std::size_t i = 0; i < values.size(); ++i) {
    // With every eligible value NaN, all eligible candidates tie.
    if (eligible[i] && (!any || values[i] >= best - kTieTolerance)) result.winners.push_back(i);
  }
  if (rule == TieRule::lowest_index) result.winners.resize(1);
  result.values = std::move(values);
  return result;
}

bool winners_intersect(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  for (std::size_t x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  }
  return false;
}

}  // namespace nnv
