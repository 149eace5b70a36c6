// Copyright 2026 The DocSplit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Ten reference scenarios on one 5-page packet (an invoice on pages 1-3 and
// a form on pages 4-5), each with a prediction and the published metric
// values it must reproduce.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "docsplit/classical.hpp"
#include "docsplit/metrics.hpp"
#include "docsplit/model.hpp"

namespace docsplit {

struct EdgeCase {
  std::string name;
  PredictedSplit prediction;
  // packet, clustering, v_measure, rand_index, ordering
  std::array<double, 5> proposed{};
  // page, page+split, page+split+order, in percent
  std::array<double, 3> classical{};
  // Set when our classical values knowingly differ from the published row.
  std::optional<std::array<double, 3>> classical_ours;
  std::string note;
};

struct EdgeCaseSuite {
  GroundTruthPacket ground_truth;
  std::vector<EdgeCase> cases;
};

// Parsed once from the embedded fixture document.
const EdgeCaseSuite& edge_cases();
const std::string& edge_case_json();

inline constexpr double kProposedTolerance = 5e-5;

struct SelftestRow {
  std::string name;
  PacketScore proposed;
  ClassicalScore classical;
  bool proposed_ok = false;
  bool classical_ok = false;  // exact published row, or the declared divergence
  bool known_divergent = false;
  double max_proposed_error = 0.0;
};

struct SelftestResult {
  std::vector<SelftestRow> rows;
  double seconds = 0.0;

  bool passed() const;
};

SelftestResult run_selftest(const MetricWeights& weights = {});
std::string format_selftest(const SelftestResult& result);

// Writes gt/edge-case.jsonl, pred/<slug>.json per case, and expected.json.
void export_edge_cases(const std::filesystem::path& dir);

std::string slug(std::string_view name);

}  // namespace docsplit
