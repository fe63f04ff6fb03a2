// Copyright 2026 The dluce Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dluce/cli/formats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "dluce/outcome_space.hpp"

namespace dluce::cli {
namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

bool is_blank(const std::string& s) { return trim(s).empty(); }

// RFC 4180 style fields within a single line; surrounding whitespace outside
// quotes is dropped.
std::vector<std::string> split_csv_line(const std::string& line, int lineno) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cell += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      if (!is_blank(cell)) throw ParseError("stray quote in field", lineno);
      cell.clear();
      quoted = was_quoted = true;
    } else if (c == ',') {
      cells.push_back(was_quoted ? cell : trim(cell));
      cell.clear();
      was_quoted = false;
    } else if (was_quoted) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        throw ParseError("text after closing quote", lineno);
      }
    } else {
      cell += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", lineno);
  cells.push_back(was_quoted ? cell : trim(cell));
  return cells;
}

std::string csv_escape(const std::string& s) {
  const bool needs_quotes =
      s.find_first_of(",\"\n\r") != std::string::npos ||
      (!s.empty() && (std::isspace(static_cast<unsigned char>(s.front())) ||
                      std::isspace(static_cast<unsigned char>(s.back()))));
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool is_na(const std::string& cell) {
  if (cell.empty()) return true;
  std::string lower = cell;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return lower == "na";
}

void check_unique_labels(const std::vector<std::string>& items, int lineno) {
  std::set<std::string> seen;
  for (const std::string& label : items) {
    if (label.empty()) throw ParseError("empty item label", lineno);
    if (!seen.insert(label).second) {
      throw ParseError("duplicate item label '" + label + "'", lineno);
    }
  }
}

Json parse_json(std::istream& in, int lineno = 0) {
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
  }
}

std::vector<std::string> string_array(const Json& value, const std::string& what,
                                      int lineno) {
  if (!value.is_array()) throw ParseError(what + " must be an array", lineno);
  std::vector<std::string> out;
  for (const Json& v : value) {
    if (!v.is_string()) throw ParseError(what + " must hold strings", lineno);
    out.push_back(v.get<std::string>());
  }
  return out;
}

// Universe that grows as new labels are seen unless it was declared.
class Universe {
 public:
  explicit Universe(std::vector<std::string> declared = {}, bool fixed = false)
      : items_(std::move(declared)), fixed_(fixed) {}

  ItemIndex intern(const std::string& label, const std::string& where,
                   int lineno) {
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (items_[i] == label) return static_cast<ItemIndex>(i);
    }
    if (fixed_) throw ParseError(where + ": unknown item '" + label + "'", lineno);
    items_.push_back(label);
    return static_cast<ItemIndex>(items_.size() - 1);
  }

  const std::vector<std::string>& items() const { return items_; }

 private:
  std::vector<std::string> items_;
  bool fixed_;
};

Json labelled_values(const std::vector<double>& values,
                     const std::vector<std::string>& items) {
  Json out = Json::object();
  for (std::size_t i = 0; i < values.size(); ++i) out[items[i]] = values[i];
  return out;
}

Json labels(const ItemSet& set, const std::vector<std::string>& items) {
  Json out = Json::array();
  for (ItemIndex i : set) out.push_back(items[i]);
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      line_(line) {}

DataFormat parse_data_format(const std::string& name) {
  if (name == "wide-csv") return DataFormat::kWideCsv;
  if (name == "contests-json") return DataFormat::kContestsJson;
  if (name == "rankings-jsonl") return DataFormat::kRankingsJsonl;
  throw ParseError("unknown data format '" + name + "'");
}

WideTable read_wide_csv(std::istream& in) {
  WideTable table;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  bool label_column = false;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') {
      if (!have_header) table.comments.push_back(line);
      continue;
    }
    if (is_blank(line)) continue;
    std::vector<std::string> cells = split_csv_line(line, lineno);
    if (!have_header) {
      label_column = cells.front().empty();
      table.data.items.assign(cells.begin() + (label_column ? 1 : 0), cells.end());
      if (table.data.items.empty()) throw ParseError("header has no items", lineno);
      check_unique_labels(table.data.items, lineno);
      width = cells.size();
      have_header = true;
      continue;
    }
    if (cells.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " cells, found " +
                           std::to_string(cells.size()),
                       lineno);
    }
    const std::size_t offset = label_column ? 1 : 0;
    if (label_column) table.row_labels.push_back(cells.front());
    Contest contest;
    for (std::size_t k = offset; k < cells.size(); ++k) {
      const std::string& cell = cells[k];
      const ItemIndex item = static_cast<ItemIndex>(k - offset);
      if (is_na(cell)) continue;
      if (cell == "1") {
        contest.winners.push_back(item);
      } else if (cell != "0") {
        throw ParseError("cell '" + cell + "' for item '" +
                             table.data.items[item] + "' is not NA, 0 or 1",
                         lineno);
      }
      contest.comparison.push_back(item);
    }
    if (contest.comparison.size() < 2) {
      throw ParseError("contest needs at least 2 compared items", lineno);
    }
    if (contest.winners.empty()) {
      throw ParseError("contest has no winner (no cell equal to 1)", lineno);
    }
    if (contest.size() > kMaxComparisonSize) {
      throw ParseError("contest compares more than " +
                           std::to_string(kMaxComparisonSize) + " items",
                       lineno);
    }
    table.data.contests.push_back(std::move(contest));
  }
  if (!have_header) throw ParseError("missing header row");
  return table;
}

void write_wide_csv(std::ostream& out, const WideTable& table) {
  const Dataset& data = table.data;
  const bool label_column = !table.row_labels.empty();
  if (label_column && table.row_labels.size() != data.contests.size()) {
    throw ModelError("row label count does not match contest count");
  }
  for (const std::string& comment : table.comments) out << comment << '\n';
  for (int i = 0; i < data.num_items(); ++i) {
    if (i > 0 || label_column) out << ',';
    out << csv_escape(data.items[i]);
  }
  out << '\n';
  std::vector<const char*> cells(data.num_items());
  for (int k = 0; k < data.num_contests(); ++k) {
    std::fill(cells.begin(), cells.end(), "NA");
    for (ItemIndex i : data.contests[k].comparison) cells[i] = "0";
    for (ItemIndex i : data.contests[k].winners) cells[i] = "1";
    if (label_column) out << csv_escape(table.row_labels[k]);
    for (int i = 0; i < data.num_items(); ++i) {
      if (i > 0 || label_column) out << ',';
      out << cells[i];
    }
    out << '\n';
  }
}

Dataset read_contests_json(std::istream& in) {
  const Json doc = parse_json(in);
  const Json* contests = &doc;
  Universe universe;
  if (doc.is_object()) {
    if (!doc.contains("contests")) throw ParseError("missing \"contests\" array");
    contests = &doc.at("contests");
    if (doc.contains("items")) {
      std::vector<std::string> declared = string_array(doc.at("items"), "\"items\"", 0);
      check_unique_labels(declared, 0);
      universe = Universe(std::move(declared), true);
    }
  }
  if (!contests->is_array()) throw ParseError("\"contests\" must be an array");

  std::vector<Contest> parsed;
  for (std::size_t k = 0; k < contests->size(); ++k) {
    const Json& c = (*contests)[k];
    const std::string where = "contest " + std::to_string(k + 1);
    if (!c.is_object() || !c.contains("items") || !c.contains("winners")) {
      throw ParseError(where + ": expected {\"items\": [...], \"winners\": [...]}");
    }
    ItemSet comparison, winners;
    for (const std::string& label : string_array(c.at("items"), where + " items", 0)) {
      comparison.push_back(universe.intern(label, where, 0));
    }
    for (const std::string& label : string_array(c.at("winners"), where + " winners", 0)) {
      winners.push_back(universe.intern(label, where, 0));
    }
    try {
      parsed.push_back(make_contest(std::move(comparison), std::move(winners)));
    } catch (const ModelError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  Dataset data;
  data.items = universe.items();
  data.contests = std::move(parsed);
  try {
    data.validate();
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
  return data;
}

void write_contests_json(std::ostream& out, const Dataset& data,
                         const Json& metadata) {
  Json head = Json::object();
  head["schema"] = 1;
  if (!metadata.is_null()) head["metadata"] = metadata;
  head["items"] = data.items;
  std::string prefix = head.dump();
  prefix.pop_back();  // reopen the object to append the contests array
  out << prefix << ",\"contests\":[\n";
  for (int k = 0; k < data.num_contests(); ++k) {
    Json contest;
    contest["items"] = labels(data.contests[k].comparison, data.items);
    contest["winners"] = labels(data.contests[k].winners, data.items);
    out << contest.dump() << (k + 1 < data.num_contests() ? ",\n" : "\n");
  }
  out << "]}\n";
}

RankingData read_rankings_jsonl(std::istream& in) {
  Universe universe;
  RankingData result;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    Json doc;
    try {
      doc = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    if (!doc.is_object() || !doc.contains("groups") || !doc.at("groups").is_array()) {
      throw ParseError("expected {\"groups\": [[...], ...]}", lineno);
    }
    TiedRanking ranking;
    for (const Json& group : doc.at("groups")) {
      ItemSet members;
      for (const std::string& label : string_array(group, "each group", lineno)) {
        members.push_back(universe.intern(label, "ranking", lineno));
      }
      ranking.groups.push_back(std::move(members));
    }
    if (doc.contains("unranked")) {
      for (const std::string& label :
           string_array(doc.at("unranked"), "\"unranked\"", lineno)) {
        ranking.unranked.push_back(universe.intern(label, "ranking", lineno));
      }
    }
    try {
      decompose(ranking);
    } catch (const ModelError& e) {
      throw ParseError(e.what(), lineno);
    }
    result.rankings.push_back(std::move(ranking));
  }
  result.items = universe.items();
  return result;
}

Dataset load_dataset(const std::string& path, DataFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  switch (format) {
    case DataFormat::kWideCsv:
      return read_wide_csv(in).data;
    case DataFormat::kContestsJson:
      return read_contests_json(in);
    case DataFormat::kRankingsJsonl: {
      const RankingData rankings = read_rankings_jsonl(in);
      return rankings_to_dataset(rankings.items, rankings.rankings);
    }
  }
  throw ParseError("unknown data format");
}

std::string format_number(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

void write_expanded_csv(std::ostream& out, const Dataset& data,
                        int max_tie_order) {
  const std::vector<OutcomeRow> rows = expand_dataset(data, max_tie_order);
  out << ",comparison";
  for (const std::string& item : data.items) out << ',' << csv_escape(item);
  for (int t = 2; t <= max_tie_order; ++t) out << ",delta" << t;
  out << ",outcome\n";
  for (const OutcomeRow& row : rows) {
    out << csv_escape(row_label(row, data.items)) << ',' << row.contest_index;
    for (double share : row.item_shares) out << ',' << format_number(share);
    for (int indicator : row.tie_indicators) out << ',' << indicator;
    out << ',' << (row.observed ? 1 : 0) << '\n';
  }
}

Json connectivity_to_json(const ConnectivityReport& report,
                          const std::vector<std::string>& items) {
  Json components = Json::array();
  for (const ItemSet& component : report.components) {
    components.push_back(labels(component, items));
  }
  Json doc = Json::object();
  doc["strongly_connected"] = report.strongly_connected;
  doc["components"] = components;
  doc["never_winning_items"] = labels(report.never_winning_items, items);
  return doc;
}

Json fit_report_to_json(const FitReport& report, const Dataset& data,
                        bool equal_strengths) {
  const std::vector<std::string>& items = data.items;
  const ModelParams& params = report.params;
  Json doc = Json::object();
  doc["schema"] = 1;
  doc["items"] = items;
  doc["reference_item"] = items.at(params.reference_item);
  doc["equal_strengths"] = equal_strengths;
  doc["max_tie_order"] = params.max_tie_order();
  doc["strengths"] = labelled_values(params.log_strength, items);
  Json ties = Json::object();
  for (int t = 2; t <= params.max_tie_order(); ++t) {
    const auto& gamma = params.log_tie_prevalence[t - 2];
    ties[std::to_string(t)] = gamma ? Json(*gamma) : Json(nullptr);
  }
  doc["tie_prevalence"] = ties;

  Json se_strengths = Json::object();
  Json se_ties = Json::object();
  const ParameterLayout& layout = report.layout;
  for (std::size_t k = 0; k < layout.free_items.size(); ++k) {
    se_strengths[items[layout.free_items[k]]] = report.std_errors[k];
  }
  for (std::size_t k = 0; k < layout.free_orders.size(); ++k) {
    se_ties[std::to_string(layout.free_orders[k])] =
        report.std_errors[layout.free_items.size() + k];
  }
  doc["std_errors"] = {{"strengths", se_strengths}, {"tie_prevalence", se_ties}};

  doc["loglik"] = report.loglik;
  doc["deviance"] = report.deviance;
  doc["pearson"] = report.pearson_chi_sq;
  doc["df"] = report.residual_df;
  doc["converged"] = report.converged;
  doc["iterations"] = report.iterations;
  doc["score_norm"] = report.score_norm;

  doc["connectivity"] = connectivity_to_json(report.connectivity, items);

  Json tie_counts = Json::object();
  for (int t = 2; t < static_cast<int>(report.sufficient_stats.tie_counts.size()); ++t) {
    tie_counts[std::to_string(t)] = report.sufficient_stats.tie_counts[t];
  }
  doc["sufficient_statistics"] = {
      {"item_scores", labelled_values(report.sufficient_stats.item_scores, items)},
      {"tie_counts", tie_counts}};

  constexpr double kPoints = 6.0;
  doc["points"] = {
      {"per_contest", kPoints},
      {"observed", labelled_values(observed_points(data, kPoints), items)},
      {"expected", labelled_values(expected_points(data, params, kPoints), items)}};
  return doc;
}

Model model_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("strengths") ||
      !doc.at("strengths").is_object()) {
    throw ParseError("model needs a \"strengths\" object");
  }
  const Json& strengths = doc.at("strengths");
  Model model;
  if (doc.contains("items")) {
    model.items = string_array(doc.at("items"), "\"items\"", 0);
  } else {
    for (const auto& [label, value] : strengths.items()) model.items.push_back(label);
  }
  check_unique_labels(model.items, 0);
  if (model.items.empty()) throw ParseError("model has no items");

  for (const std::string& label : model.items) {
    if (!strengths.contains(label) || !strengths.at(label).is_number()) {
      throw ParseError("no numeric strength for item '" + label + "'");
    }
    model.params.log_strength.push_back(strengths.at(label).get<double>());
  }

  const Json ties = doc.value("tie_prevalence", Json::object());
  if (!ties.is_object()) throw ParseError("\"tie_prevalence\" must be an object");
  int max_order = 1;
  for (const auto& [key, value] : ties.items()) {
    int order = 0;
    const auto parsed = std::from_chars(key.data(), key.data() + key.size(), order);
    if (parsed.ec != std::errc() || parsed.ptr != key.data() + key.size() || order < 2) {
      throw ParseError("tie order key '" + key + "' is not an integer >= 2");
    }
    max_order = std::max(max_order, order);
  }
  if (doc.contains("max_tie_order")) {
    if (!doc.at("max_tie_order").is_number_integer()) {
      throw ParseError("\"max_tie_order\" must be an integer");
    }
    const int declared = doc.at("max_tie_order").get<int>();
    if (declared < max_order) {
      throw ParseError("tie_prevalence lists orders above max_tie_order");
    }
    max_order = declared;
  }
  for (int t = 2; t <= max_order; ++t) {
    const std::string key = std::to_string(t);
    if (!ties.contains(key)) {
      throw ParseError("tie order support missing: no tie_prevalence entry for order " + key);
    }
    const Json& value = ties.at(key);
    if (value.is_null()) {
      model.params.log_tie_prevalence.emplace_back(std::nullopt);
    } else if (value.is_number()) {
      model.params.log_tie_prevalence.emplace_back(value.get<double>());
    } else {
      throw ParseError("tie prevalence for order " + key + " must be a number or null");
    }
  }

  model.params.reference_item = static_cast<ItemIndex>(model.items.size()) - 1;
  if (doc.contains("reference_item") && !doc.at("reference_item").is_null()) {
    const Json& ref = doc.at("reference_item");
    if (!ref.is_string()) throw ParseError("\"reference_item\" must be a label");
    const auto it = std::find(model.items.begin(), model.items.end(), ref.get<std::string>());
    if (it == model.items.end()) {
      throw ParseError("unknown reference item '" + ref.get<std::string>() + "'");
    }
    model.params.reference_item = static_cast<ItemIndex>(it - model.items.begin());
  }
  return model;
}

Json distribution_to_json(const OutcomeDistribution& dist,
                          const std::vector<std::string>& items) {
  Json probabilities = Json::object();
  for (std::size_t k = 0; k < dist.outcomes.size(); ++k) {
    probabilities[outcome_label(dist.outcomes[k], items)] = dist.probabilities[k];
  }
  Json doc = Json::object();
  doc["schema"] = 1;
  doc["items"] = labels(dist.comparison, items);
  doc["log_normalizer"] = dist.log_normalizer;
  doc["probabilities"] = probabilities;
  return doc;
}

}  // namespace dluce::cli
