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

#include "dluce/cli/commands.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "dluce/cli/formats.hpp"
#include "dluce/estimation.hpp"
#include "dluce/model.hpp"
#include "dluce/simulation.hpp"

namespace dluce::cli {
namespace {

constexpr double kPointsPerContest = 6.0;

// Writes `text` to `path`, or to `out` when no path was given.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + path + "'");
  file << text;
  if (!file) throw ParseError("failed writing '" + path + "'");
}

std::string points_line(const std::vector<double>& points,
                        const std::vector<std::string>& items) {
  std::string line;
  for (std::size_t i = 0; i < points.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", points[i]);
    if (i > 0) line += ", ";
    line += items[i] + " " + buf;
  }
  return line;
}

std::string set_text(const ItemSet& set, const std::vector<std::string>& items) {
  std::string text;
  for (ItemIndex i : set) text += (text.empty() ? "" : " ") + items[i];
  return text;
}

struct DataOptions {
  std::string path;
  std::string format = "wide-csv";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--data", path, "Input data file")->required();
    cmd->add_option("--format", format, "wide-csv | contests-json | rankings-jsonl")
        ->check(CLI::IsMember({"wide-csv", "contests-json", "rankings-jsonl"}));
  }
  Dataset load() const { return load_dataset(path, parse_data_format(format)); }
};

struct FitOptions {
  DataOptions data;
  std::string ref_item;
  std::optional<int> max_tie_order;
  double tol = 1e-8;
  int max_iter = 100;
  bool equal_strengths = false;
  bool strict = false;
  std::string out;
};

int cmd_fit(const FitOptions& opt, std::ostream& out) {
  const Dataset data = opt.data.load();
  FitConfig config;
  config.tol = opt.tol;
  config.max_iter = opt.max_iter;
  config.equal_strengths = opt.equal_strengths;
  config.max_tie_order = opt.max_tie_order;
  if (!opt.ref_item.empty()) config.reference_item = data.index_of(opt.ref_item);

  const ConnectivityReport connectivity = check_connectivity(data);
  const bool disconnected = opt.strict && !connectivity.strongly_connected;
  try {
    const FitReport report = fit(data, config);
    emit(fit_report_to_json(report, data, opt.equal_strengths).dump(2) + "\n",
         opt.out, out);
    if (disconnected) return kExitDisconnected;
    return report.converged ? kExitOk : kExitNotConverged;
  } catch (const SingularInformation& e) {
    Json doc = Json::object();
    doc["schema"] = 1;
    doc["error"] = e.what();
    doc["converged"] = false;
    doc["connectivity"] = connectivity_to_json(connectivity, data.items);
    emit(doc.dump(2) + "\n", opt.out, out);
    return disconnected ? kExitDisconnected : kExitNotConverged;
  }
}

struct PredictOptions {
  std::string model_path;
  std::vector<std::string> items;
  std::string out;
};

int cmd_predict(const PredictOptions& opt, std::ostream& out) {
  std::ifstream in(opt.model_path);
  if (!in) throw ParseError("cannot open '" + opt.model_path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid model JSON: ") + e.what());
  }
  const Model model = model_from_json(doc);
  ItemSet comparison;
  for (const std::string& label : opt.items) {
    const auto it = std::find(model.items.begin(), model.items.end(), label);
    if (it == model.items.end()) throw ModelError("unknown item '" + label + "'");
    comparison.push_back(static_cast<ItemIndex>(it - model.items.begin()));
  }
  std::sort(comparison.begin(), comparison.end());
  if (std::adjacent_find(comparison.begin(), comparison.end()) != comparison.end()) {
    throw ModelError("an item is listed more than once");
  }
  if (comparison.size() < 2) throw ModelError("--items needs at least 2 items");
  const OutcomeDistribution dist = outcome_distribution(comparison, model.params);
  Json result = distribution_to_json(dist, model.items);
  result["max_tie_order"] = model.params.max_tie_order();
  emit(result.dump(2) + "\n", opt.out, out);
  return kExitOk;
}

struct ExpandOptions {
  DataOptions data;
  std::optional<int> max_tie_order;
  std::string out;
};

int cmd_expand(const ExpandOptions& opt, std::ostream& out) {
  const Dataset data = opt.data.load();
  const int max_order = opt.max_tie_order.value_or(data.max_observed_tie_order());
  std::ostringstream text;
  write_expanded_csv(text, data, std::max(1, max_order));
  emit(text.str(), opt.out, out);
  return kExitOk;
}

struct SimulateOptions {
  std::optional<int> n;
  int r = 2;
  int reps = 1;
  std::string params_path;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
  SimConfig config;
  config.seed = opt.seed;
  config.replications = opt.reps;
  if (!opt.params_path.empty()) {
    std::ifstream in(opt.params_path);
    if (!in) throw ParseError("cannot open '" + opt.params_path + "'");
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("invalid params JSON: ") + e.what());
    }
    Model model = model_from_json(doc);
    if (opt.n && *opt.n != static_cast<int>(model.items.size())) {
      throw ModelError("--n " + std::to_string(*opt.n) + " does not match the " +
                       std::to_string(model.items.size()) + " items in the params file");
    }
    config.items = std::move(model.items);
    config.params = std::move(model.params);
  } else {
    if (!opt.n) throw ModelError("--n is required without --params");
    config.params = ModelParams::neutral(*opt.n, opt.r);
  }
  const int n = config.params.num_items();
  config.design = round_robin_design(n, opt.r);
  const Dataset data = simulate_tournament(config);

  std::string format = opt.format;
  if (format.empty()) {
    const bool csv = opt.out.size() >= 4 && opt.out.substr(opt.out.size() - 4) == ".csv";
    format = csv ? "wide-csv" : "contests-json";
  }
  std::ostringstream text;
  if (format == "wide-csv") {
    WideTable table;
    table.data = data;
    table.comments.push_back("# generator=" + std::string(kGeneratorName) +
                             " seed=" + std::to_string(opt.seed) +
                             " n=" + std::to_string(n) + " r=" + std::to_string(opt.r) +
                             " reps=" + std::to_string(opt.reps));
    write_wide_csv(text, table);
  } else {
    Json metadata = Json::object();
    metadata["generator"] = kGeneratorName;
    metadata["seed"] = opt.seed;
    metadata["n"] = n;
    metadata["r"] = opt.r;
    metadata["reps"] = opt.reps;
    metadata["params"] = opt.params_path.empty() ? Json(nullptr) : Json(opt.params_path);
    write_contests_json(text, data, metadata);
  }
  emit(text.str(), opt.out, out);
  return kExitOk;
}

struct CheckOptions {
  DataOptions data;
  bool strict = false;
  bool json = false;
};

int cmd_check(const CheckOptions& opt, std::ostream& out) {
  const Dataset data = opt.data.load();
  const std::vector<double> points = observed_points(data, kPointsPerContest);
  const ConnectivityReport connectivity = check_connectivity(data);
  if (opt.json) {
    Json doc = Json::object();
    doc["schema"] = 1;
    doc["contests"] = data.num_contests();
    Json pts = Json::object();
    for (int i = 0; i < data.num_items(); ++i) pts[data.items[i]] = points[i];
    doc["points"] = {{"per_contest", kPointsPerContest}, {"observed", pts}};
    doc["connectivity"] = connectivity_to_json(connectivity, data.items);
    out << doc.dump(2) << "\n";
  } else {
    out << "contests: " << data.num_contests() << "\n";
    out << "points (6 per contest): " << points_line(points, data.items) << "\n";
    out << "strongly connected: " << (connectivity.strongly_connected ? "yes" : "no")
        << "\n";
    out << "components:";
    for (const ItemSet& component : connectivity.components) {
      out << " {" << set_text(component, data.items) << "}";
    }
    out << "\n";
    out << "never winning: "
        << (connectivity.never_winning_items.empty()
                ? std::string("none")
                : set_text(connectivity.never_winning_items, data.items))
        << "\n";
  }
  return opt.strict && !connectivity.strongly_connected ? kExitDisconnected : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Davidson-Luce model for choices with ties of any order", "dluce"};
  app.require_subcommand(1);

  FitOptions fit_opt;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Maximum-likelihood fit, JSON report");
  fit_opt.data.add_to(fit_cmd);
  fit_cmd->add_option("--ref-item", fit_opt.ref_item, "Item whose log-strength is fixed at 0");
  fit_cmd->add_option("--max-tie-order", fit_opt.max_tie_order,
                      "Largest tie order modelled (default: largest observed)");
  fit_cmd->add_option("--tol", fit_opt.tol, "Score infinity-norm tolerance")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--max-iter", fit_opt.max_iter, "Fisher scoring iterations")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_flag("--equal-strengths", fit_opt.equal_strengths,
                    "Fix every strength equal; estimate tie prevalences only");
  fit_cmd->add_flag("--strict", fit_opt.strict,
                    "Exit 3 when the win/tie graph is not strongly connected");
  fit_cmd->add_option("--out", fit_opt.out, "Write the report here instead of stdout");

  PredictOptions predict_opt;
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "Outcome distribution for a comparison set");
  predict_cmd->add_option("--model", predict_opt.model_path, "Fit report / model JSON")
      ->required();
  predict_cmd->add_option("--items", predict_opt.items, "Comma-separated item labels")
      ->required()
      ->delimiter(',');
  predict_cmd->add_option("--out", predict_opt.out, "Output path");

  ExpandOptions expand_opt;
  CLI::App* expand_cmd =
      app.add_subcommand("expand", "One row per candidate outcome, as CSV");
  expand_opt.data.add_to(expand_cmd);
  expand_cmd->add_option("--max-tie-order", expand_opt.max_tie_order,
                         "Largest tie order enumerated (default: largest observed)");
  expand_cmd->add_option("--out", expand_opt.out, "Output path");

  SimulateOptions sim_opt;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Simulate a balanced round-robin tournament");
  sim_cmd->add_option("--n", sim_opt.n, "Number of items");
  sim_cmd->add_option("--r", sim_opt.r, "Items per contest")->required();
  sim_cmd->add_option("--reps", sim_opt.reps, "Replications of the round robin")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--params", sim_opt.params_path,
                      "Model JSON (default: equal strengths, every delta = 1)");
  sim_cmd->add_option("--seed", sim_opt.seed, "Generator seed");
  sim_cmd->add_option("--out", sim_opt.out, "Output path (.csv selects wide CSV)");
  sim_cmd->add_option("--format", sim_opt.format, "wide-csv | contests-json")
      ->check(CLI::IsMember({"wide-csv", "contests-json"}));

  CheckOptions check_opt;
  CLI::App* check_cmd =
      app.add_subcommand("check", "Points totals and connectivity diagnostics");
  check_opt.data.add_to(check_cmd);
  check_cmd->add_flag("--strict", check_opt.strict,
                      "Exit 3 when the win/tie graph is not strongly connected");
  check_cmd->add_flag("--json", check_opt.json, "Machine-readable output");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit_opt, out);
    if (*predict_cmd) return cmd_predict(predict_opt, out);
    if (*expand_cmd) return cmd_expand(expand_opt, out);
    if (*sim_cmd) return cmd_simulate(sim_opt, out);
    if (*check_cmd) return cmd_check(check_opt, out);
  } catch (const std::exception& e) {
    err << "dluce: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dluce::cli
