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

// File formats read and written by the dluce tool.
//
// Wide CSV (contest table)
//   Header row of item labels, then one row per contest. Cells are "1"
//   (in the winning set), "0" (compared, not winning), or "NA"/empty (not
//   compared; "NA" is case-insensitive). If the first header cell is empty,
//   the first column holds contest labels. Lines starting with '#' are
//   comments and are preserved in order ahead of the header. Canonical form
//   written back: LF line endings, cells unquoted unless they need quoting,
//   "NA" for non-participation.
//
// Contests JSON
//   {"schema": 1, "items": [...], "metadata": {...},
//    "contests": [{"items": [...], "winners": [...]}, ...]}
//   "items" (the universe) and "metadata" are optional; a bare array of
//   contest objects is also accepted. Without "items" the universe is the
//   labels in order of first appearance.
//
// Rankings JSONL
//   One JSON object per line: {"groups": [["A"], ["B", "C"], ...]},
//   best group first, with an optional "unranked": [...] listing items that
//   were available but not placed. Blank lines are skipped.
//
// Expanded CSV
//   One row per candidate outcome of each contest: row label
//   ("<contest>: A=B"), comparison index, one share column per item in
//   universe order, delta2..delta<t_max> indicators, observed flag.
//
// Fit report / model JSON (schema 1)
//   {"schema": 1, "items": [...], "reference_item": "D",
//    "equal_strengths": false, "max_tie_order": 3,
//    "strengths": {"A": lambda, ...},
//    "tie_prevalence": {"2": gamma, "3": gamma | null},
//    "std_errors": {"strengths": {...}, "tie_prevalence": {...}},
//    "loglik", "deviance", "pearson", "df", "converged", "iterations",
//    "score_norm", "connectivity": {...}, "sufficient_statistics": {...},
//    "points": {"per_contest": 6, "observed": {...}, "expected": {...}}}
//   A null tie prevalence marks an excluded order. The same document (only
//   "strengths" and "tie_prevalence" are required) is accepted as a model
//   for prediction and simulation.

#ifndef DLUCE_CLI_FORMATS_HPP_
#define DLUCE_CLI_FORMATS_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dluce/estimation.hpp"
#include "dluce/model.hpp"
#include "dluce/rankings.hpp"
#include "dluce/types.hpp"
#include "json.hpp"

namespace dluce::cli {

using Json = nlohmann::ordered_json;

// Malformed input. line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

enum class DataFormat { kWideCsv, kContestsJson, kRankingsJsonl };

DataFormat parse_data_format(const std::string& name);

struct WideTable {
  Dataset data;
  std::vector<std::string> row_labels;  // empty when there is no label column
  std::vector<std::string> comments;    // full lines, including '#'
};

WideTable read_wide_csv(std::istream& in);
void write_wide_csv(std::ostream& out, const WideTable& table);

Dataset read_contests_json(std::istream& in);
void write_contests_json(std::ostream& out, const Dataset& data,
                         const Json& metadata);

struct RankingData {
  std::vector<std::string> items;
  std::vector<TiedRanking> rankings;
};

RankingData read_rankings_jsonl(std::istream& in);

// Reads any input format into a contest dataset (rankings are decomposed).
Dataset load_dataset(const std::string& path, DataFormat format);

void write_expanded_csv(std::ostream& out, const Dataset& data,
                        int max_tie_order);

// Shortest decimal string that reads back to the same double.
std::string format_number(double value);

Json connectivity_to_json(const ConnectivityReport& report,
                          const std::vector<std::string>& items);

Json fit_report_to_json(const FitReport& report, const Dataset& data,
                        bool equal_strengths);

struct Model {
  std::vector<std::string> items;
  ModelParams params;
};

// Throws ParseError for missing strengths, unknown reference items, or a
// tie order up to max_tie_order with no tie_prevalence entry.
Model model_from_json(const Json& doc);

Json distribution_to_json(const OutcomeDistribution& dist,
                          const std::vector<std::string>& items);

}  // namespace dluce::cli

#endif  // DLUCE_CLI_FORMATS_HPP_
