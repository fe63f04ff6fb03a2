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

// Win/tie graph connectivity. Finite maximum-likelihood strengths need every
// item to reach every other item through "beat or tied with" edges.

#include <algorithm>
#include <utility>
#include <vector>

#include "dluce/estimation.hpp"

namespace dluce {
namespace {

using Graph = std::vector<std::vector<ItemIndex>>;

// Kosaraju: order vertices by DFS finish time, then collect components on
// the transposed graph in reverse finish order. Iterative to avoid deep
// recursion on long chains.
std::vector<ItemSet> strong_components(const Graph& graph) {
  const int n = static_cast<int>(graph.size());
  std::vector<char> visited(n, 0);
  std::vector<ItemIndex> finish;
  finish.reserve(n);
  std::vector<std::pair<ItemIndex, std::size_t>> stack;
  for (ItemIndex root = 0; root < n; ++root) {
    if (visited[root]) continue;
    visited[root] = 1;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < graph[v].size()) {
        const ItemIndex w = graph[v][next++];
        if (!visited[w]) {
          visited[w] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        finish.push_back(v);
        stack.pop_back();
      }
    }
  }

  Graph reversed(n);
  for (ItemIndex v = 0; v < n; ++v) {
    for (ItemIndex w : graph[v]) reversed[w].push_back(v);
  }
  std::vector<ItemSet> components;
  std::vector<char> assigned(n, 0);
  std::vector<ItemIndex> todo;
  for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
    if (assigned[*it]) continue;
    ItemSet component;
    assigned[*it] = 1;
    todo.push_back(*it);
    while (!todo.empty()) {
      const ItemIndex v = todo.back();
      todo.pop_back();
      component.push_back(v);
      for (ItemIndex w : reversed[v]) {
        if (!assigned[w]) {
          assigned[w] = 1;
          todo.push_back(w);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  std::sort(components.begin(), components.end(),
            [](const ItemSet& a, const ItemSet& b) { return a.front() < b.front(); });
  return components;
}

}  // namespace

ConnectivityReport check_connectivity(const Dataset& data) {
  data.validate();
  const int n = data.num_items();
  Graph graph(n);
  std::vector<char> wins(n, 0);
  for (const Contest& contest : data.contests) {
    for (ItemIndex winner : contest.winners) {
      wins[winner] = 1;
      // Losers and co-winners alike: every other compared item.
      for (ItemIndex other : contest.comparison) {
        if (other != winner) graph[winner].push_back(other);
      }
    }
  }
  for (auto& edges : graph) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  ConnectivityReport report;
  report.components = strong_components(graph);
  report.strongly_connected = report.components.size() == 1;
  for (ItemIndex i = 0; i < n; ++i) {
    if (!wins[i]) report.never_winning_items.push_back(i);
  }
  return report;
}

}  // namespace dluce
