#include "nnv/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nnv/errors.hpp"

namespace nnv {

namespace {

using nlohmann::json;

ParseError structural(const std::string& what) { return ParseError("election file: " + what, 0, 0); }

ParseError located(const std::string& what, std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what, line, column);
}

double number_at(const json& value, const std::string& where) {
  if (!value.is_number()) throw structural(where + " must be a number");
  return value.get<double>();
}

}  // namespace

ElectionDocument parse_election_json(std::string_view text, ValidationMode mode) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw located(e.what(), text, e.byte);
  }
  if (!doc.is_object()) throw structural("top level must be an object");

  ElectionDocument out;
  if (!doc.contains("candidates") || !doc["candidates"].is_array()) throw structural("'candidates' must be an array");
  for (const auto& name : doc["candidates"]) {
    if (!name.is_string()) throw structural("candidate names must be strings");
    out.names.push_back(name.get<std::string>());
  }
  if (out.names.empty()) throw structural("'candidates' must not be empty");
  if (doc.contains("norm")) out.norm = number_at(doc["norm"], "'norm'");

  if (doc.contains("validation")) {
    const auto& v = doc["validation"];
    if (!v.is_string() || (v != "strict" && v != "lenient")) throw structural("'validation' must be \"strict\" or \"lenient\"");
    if (v == "lenient") mode = ValidationMode::lenient;
  }

  const bool has_ballots = doc.contains("ballots");
  const bool has_tallies = doc.contains("tallies");
  if (has_ballots == has_tallies) throw structural("exactly one of 'ballots' or 'tallies' is required");

  const std::size_t m = out.names.size();
  if (has_ballots) {
    if (!doc["ballots"].is_array()) throw structural("'ballots' must be an array");
    std::vector<Ballot> ballots;
    std::size_t index = 0;
    for (const auto& row : doc["ballots"]) {
      const std::string where = "ballot " + std::to_string(index++);
      if (!row.is_array()) throw structural(where + " must be an array");
      if (row.size() != m) throw structural(where + " has " + std::to_string(row.size()) + " scores, expected " + std::to_string(m));
      std::vector<double> scores;
      for (const auto& s : row) scores.push_back(number_at(s, where + " scores"));
      ballots.emplace_back(std::move(scores));
    }
    try {
      out.election.emplace(out.names, std::move(ballots), out.norm, mode);
    } catch (const std::invalid_argument& e) {
      throw structural(e.what());
    }
    out.tally = aggregate(*out.election);
  } else {
    if (!doc["tallies"].is_array() || doc["tallies"].size() != m) {
      throw structural("'tallies' must hold one [P, N] pair per candidate");
    }
    std::vector<CandidateTotals> totals;
    for (const auto& pair : doc["tallies"]) {
      if (!pair.is_array() || pair.size() != 2) throw structural("each tally entry must be [P, N]");
      const double p = number_at(pair[0], "P");
      const double n = number_at(pair[1], "N");
      if (p < 0.0 || n < 0.0) throw structural("P and N must be non-negative");
      totals.push_back({p, n});
    }
    out.tally = Tally(std::move(totals));
  }
  return out;
}

ElectionDocument load_election_file(const std::filesystem::path& path, ValidationMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0, 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_election_json(buffer.str(), mode);
}

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  if (digits < 0) {
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
  }
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  std::string s = buf;
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

json to_json(const TallyTable& table) {
  json rows = json::array();
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    const auto& t = table.tally[i];
    json row = {{"name", table.names[i]},
                {"P", t.positive},
                {"N", t.negative},
                {"popularity", popularity(t)},
                {"polarity", json_number(polarity(t))},
                {"qualified", qualified(t)}};
    for (const auto& column : table.extra) row[column.label] = json_number(column.values[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_csv(const TallyTable& table, int digits) {
  std::ostringstream os;
  os << "name,P,N,popularity,polarity,qualified";
  for (const auto& column : table.extra) os << ',' << column.label;
  os << '\n';
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    const auto& t = table.tally[i];
    os << table.names[i] << ',' << format_number(t.positive, digits) << ',' << format_number(t.negative, digits) << ','
       << format_number(popularity(t), digits) << ',' << format_number(polarity(t), digits) << ','
       << (qualified(t) ? "true" : "false");
    for (const auto& column : table.extra) os << ',' << format_number(column.values[i], digits);
    os << '\n';
  }
  return os.str();
}

std::string to_text(const TallyTable& table, int digits) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"candidate", "P", "N", "P-N", "N/P", "qualified"};
  for (const auto& column : table.extra) header.push_back(column.label);
  cells.push_back(header);
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    const auto& t = table.tally[i];
    std::vector<std::string> row = {table.names[i],
                                    format_number(t.positive, digits),
                                    format_number(t.negative, digits),
                                    format_number(popularity(t), digits),
                                    format_number(polarity(t), digits),
                                    qualified(t) ? "yes" : "no"};
    for (const auto& column : table.extra) row.push_back(format_number(column.values[i], digits));
    cells.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0) {
        os << row[c] << std::string(width[c] - row[c].size(), ' ');
      } else {
        os << "  " << std::string(width[c] - row[c].size(), ' ') << row[c];
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace nnv
