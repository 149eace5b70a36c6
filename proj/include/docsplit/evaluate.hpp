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

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "docsplit/adapter.hpp"
#include "docsplit/io.hpp"
#include "docsplit/metrics.hpp"

namespace docsplit {

// What a model produced for one packet. A record without a split (or with
// failed set) is scored as if no page had been assigned.
struct PredictionRecord {
  std::optional<PredictedSplit> split;
  ValidationReport report;
  bool failed = false;
  std::string error;
};

PredictionRecord record_from_output(const AdapterResult& result, std::size_t n);

ScoreRow evaluate_packet(const GroundTruthPacket& gt, const PredictionRecord& prediction,
                         const MetricWeights& weights = {});

// Ground-truth packets without a prediction are scored as failures. Prediction
// ids without ground truth are listed in `unmatched` with a warning each and
// left out of the aggregate.
ScoreReport evaluate_run(const std::map<std::string, GroundTruthPacket>& gt_set,
                         const std::map<std::string, PredictionRecord>& predictions,
                         const MetricWeights& weights = {});

// Reads <dir>/*.json predictions keyed by file stem; `sizes` supplies each
// packet's page count for range checks (missing ids are parsed without them).
std::map<std::string, PredictionRecord> read_prediction_dir(
    const std::filesystem::path& dir, const std::map<std::string, std::size_t>& sizes = {});

}  // namespace docsplit
