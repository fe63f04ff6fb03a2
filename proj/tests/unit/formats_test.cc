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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace dluce::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string round_trip(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  write_wide_csv(out, read_wide_csv(in));
  return out.str();
}

int parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_wide_csv(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(WideCsvTest, ReadsTriplesRoundRobin) {
  std::ifstream in(std::string(DLUCE_TEST_DATA_DIR) + "/triples_round_robin.csv");
  const WideTable table = read_wide_csv(in);
  const Dataset expected = testing::triples_round_robin();
  EXPECT_EQ(table.data.items, expected.items);
  EXPECT_EQ(table.row_labels, (std::vector<std::string>{"BCD", "ACD", "ABD", "ABC"}));
  ASSERT_EQ(table.data.num_contests(), 4);
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(table.data.contests[k].comparison, expected.contests[k].comparison);
    EXPECT_EQ(table.data.contests[k].winners, expected.contests[k].winners);
  }
}

TEST(WideCsvTest, RoundTripIsByteIdentical) {
  const std::string text = read_file(std::string(DLUCE_TEST_DATA_DIR) + "/triples_round_robin.csv");
  EXPECT_EQ(round_trip(text), text);
  const std::string unlabeled = "# seed=1\nx,y,z\n1,0,NA\nNA,1,1\n";
  EXPECT_EQ(round_trip(unlabeled), unlabeled);
}

TEST(WideCsvTest, CanonicalizesMissingCells) {
  EXPECT_EQ(round_trip("x,y,z\r\n1,0,na\r\n,1,1\r\n"), "x,y,z\n1,0,NA\nNA,1,1\n");
  EXPECT_EQ(round_trip("x,y,z\n1,0,\n"), "x,y,z\n1,0,NA\n");
}

TEST(WideCsvTest, QuotedLabels) {
  const std::string text = "\"a,b\",c\n1,0\n";
  std::istringstream in(text);
  const WideTable table = read_wide_csv(in);
  EXPECT_EQ(table.data.items[0], "a,b");
  EXPECT_EQ(round_trip(text), text);
}

TEST(WideCsvTest, MalformedRowsReportLineNumbers) {
  EXPECT_EQ(parse_error_line("A,B,C\n1,0,0\n1,0\n"), 3);
  EXPECT_EQ(parse_error_line("A,B,C\n1,0,0\n\n2,0,0\n"), 4);
  EXPECT_EQ(parse_error_line("A,B,C\nNA,NA,1\n"), 2);
  EXPECT_EQ(parse_error_line("A,B,C\n0,0,NA\n"), 2);
  EXPECT_EQ(parse_error_line("A,A\n1,0\n"), 1);
  std::istringstream bad("A,B\n1,x\n");
  try {
    read_wide_csv(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ContestsJsonTest, ReadsObjectAndArrayForms) {
  std::istringstream object(
      R"({"items": ["A", "B", "C"], "contests": [{"items": ["C", "A"], "winners": ["C"]}]})");
  const Dataset a = read_contests_json(object);
  EXPECT_EQ(a.items, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(a.contests[0].comparison, (ItemSet{0, 2}));
  EXPECT_EQ(a.contests[0].winners, (ItemSet{2}));

  std::istringstream array(R"([{"items": ["x", "y"], "winners": ["x", "y"]}])");
  const Dataset b = read_contests_json(array);
  EXPECT_EQ(b.items, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(b.contests[0].tie_order(), 2);
}

TEST(ContestsJsonTest, RejectsInvalidContests) {
  std::istringstream winner_outside(R"([{"items": ["x", "y"], "winners": ["z"]}])");
  EXPECT_THROW(read_contests_json(winner_outside), ParseError);
  std::istringstream undeclared(
      R"({"items": ["A", "B"], "contests": [{"items": ["A", "Q"], "winners": ["A"]}]})");
  EXPECT_THROW(read_contests_json(undeclared), ParseError);
  std::istringstream not_json("{");
  EXPECT_THROW(read_contests_json(not_json), ParseError);
}

TEST(ContestsJsonTest, WriteThenRead) {
  const Dataset data = testing::triples_round_robin();
  std::ostringstream out;
  write_contests_json(out, data, Json{{"seed", 3}});
  std::istringstream in(out.str());
  const Dataset back = read_contests_json(in);
  EXPECT_EQ(back.items, data.items);
  ASSERT_EQ(back.num_contests(), 4);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(back.contests[k].winners, data.contests[k].winners);
  EXPECT_EQ(Json::parse(out.str())["metadata"]["seed"], 3);
}

TEST(RankingsJsonlTest, ReadsGroupsAndUnranked) {
  std::istringstream in(
      "{\"groups\": [[\"A\", \"B\"], [\"C\"]]}\n"
      "\n"
      "{\"groups\": [[\"D\"]], \"unranked\": [\"A\"]}\n");
  const RankingData data = read_rankings_jsonl(in);
  EXPECT_EQ(data.items, (std::vector<std::string>{"A", "B", "C", "D"}));
  ASSERT_EQ(data.rankings.size(), 2u);
  EXPECT_EQ(data.rankings[1].unranked, (ItemSet{0}));
}

TEST(RankingsJsonlTest, OverlappingGroupsReportLine) {
  std::istringstream in("{\"groups\": [[\"A\"], [\"B\"]]}\n{\"groups\": [[\"A\"], [\"A\"]]}\n");
  try {
    read_rankings_jsonl(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(ExpandedCsvTest, HeaderAndFirstRows) {
  std::ostringstream out;
  write_expanded_csv(out, testing::triples_round_robin(), 3);
  std::istringstream lines(out.str());
  std::string header, first, tie;
  std::getline(lines, header);
  std::getline(lines, first);
  for (int k = 0; k < 3; ++k) std::getline(lines, tie);
  EXPECT_EQ(header, ",comparison,A,B,C,D,delta2,delta3,outcome");
  EXPECT_EQ(first, "1: B,1,0,1,0,0,0,0,1");
  EXPECT_EQ(tie, "1: B=C,1,0,0.5,0.5,0,1,0,0");
}

TEST(FormatNumberTest, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333333333");
}

TEST(ModelJsonTest, ReadsFitReportShape) {
  const Json doc = Json::parse(R"({
    "items": ["A", "B", "C"],
    "strengths": {"A": 1.0, "B": 0.5, "C": 0},
    "tie_prevalence": {"2": 0.25, "3": null}
  })");
  const Model model = model_from_json(doc);
  EXPECT_EQ(model.items.size(), 3u);
  EXPECT_EQ(model.params.reference_item, 2);
  EXPECT_EQ(model.params.max_tie_order(), 3);
  EXPECT_TRUE(model.params.admits(2));
  EXPECT_FALSE(model.params.admits(3));
}

TEST(ModelJsonTest, MissingTieOrderIsAnError) {
  const Json doc = Json::parse(R"({
    "items": ["A", "B"], "max_tie_order": 3,
    "strengths": {"A": 1.0, "B": 0}, "tie_prevalence": {"2": 0.25}
  })");
  try {
    model_from_json(doc);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("tie order support missing"), std::string::npos);
  }
}

}  // namespace
}  // namespace dluce::cli
