#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nnv {

inline constexpr double kTieTolerance = 1e-9;

enum class TieRule {
  report,        // keep every candidate within kTieTolerance of the maximum
  lowest_index,  // collapse a tie onto its lowest candidate index
};

struct WinnerResult {
  std::vector<std::size_t> winners;  // ascending; more than one entry means a tie
  std::vector<double> values;        // per-candidate score the winner was chosen on
  std::vector<std::size_t> disqualified;

  bool is_tie() const noexcept { return winners.size() > 1; }
  std::size_t winner() const { return winners.front(); }
  bool contains(std::size_t candidate) const;
};

// Argmax of `values` over the `eligible` candidates. Throws NoQualifiedCandidate
// when nothing is eligible. Ineligible indices are listed in `disqualified`.
WinnerResult select_max(std::vector<double> values, const std::vector<bool>& eligible,
                        TieRule rule = TieRule::report);

bool winners_intersect(std::span<const std::size_t> a, std::span<const std::size_t> b);

}  // namespace nnv
