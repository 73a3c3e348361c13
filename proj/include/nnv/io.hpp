#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nnv/ballot.hpp"

namespace nnv {

// Election file: {"candidates": [...], "ballots": [[...], ...], "norm": 10}.
// A file may carry "tallies": [[P, N], ...] instead of ballots when only the
// aggregated totals are known, and "validation": "lenient" to accept ballots
// that miss the norm (the caller's mode can only be relaxed, never tightened).
struct ElectionDocument {
  std::vector<std::string> names;
  std::optional<Election> election;  // empty for tally-only documents
  Tally tally;
  double norm = kDefaultNorm;
};

ElectionDocument parse_election_json(std::string_view text, ValidationMode mode = ValidationMode::strict);
ElectionDocument load_election_file(const std::filesystem::path& path, ValidationMode mode = ValidationMode::strict);

// Numbers: `digits < 0` selects the shortest form that round-trips exactly,
// otherwise fixed notation with that many decimals. Non-finite values print
// as "inf", "-inf" or "nan".
std::string format_number(double value, int digits);

// Per-candidate table: fixed columns name,P,N,popularity,polarity,qualified
// followed by any extra numeric columns in insertion order.
struct TallyTable {
  struct Column {
    std::string label;
    std::vector<double> values;
  };

  std::vector<std::string> names;
  Tally tally;
  std::vector<Column> extra;
};

nlohmann::json to_json(const TallyTable& table);
std::string to_csv(const TallyTable& table, int digits = -1);
std::string to_text(const TallyTable& table, int digits = 2);

// JSON has no infinity; non-finite values become null.
nlohmann::json json_number(double value);

}  // namespace nnv
