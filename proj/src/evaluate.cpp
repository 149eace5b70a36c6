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

#include "docsplit/evaluate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "docsplit/classical.hpp"
#include "docsplit/packet.hpp"

namespace docsplit {

namespace fs = std::filesystem;

PredictionRecord record_from_output(const AdapterResult& result, std::size_t n) {
  PredictionRecord record;
  if (!result.ok) {
    record.failed = true;
    record.error = result.error;
    return record;
  }
  auto parsed = parse_prediction(result.output, n);
  record.report = std::move(parsed.report);
  if (!parsed.value) {
    record.failed = true;
    record.error = record.report.errors.empty() ? "unparseable output"
                                                : record.report.errors.front().message;
  } else {
    record.split = std::move(parsed.value);
  }
  return record;
}

ScoreRow evaluate_packet(const GroundTruthPacket& gt, const PredictionRecord& prediction,
                         const MetricWeights& weights) {
  const PredictedSplit empty{gt.packet_id, {}};
  const bool usable = !prediction.failed && prediction.split.has_value();
  const auto& split = usable ? *prediction.split : empty;

  ScoreRow row;
  row.packet_id = gt.packet_id;
  row.pages = gt.n();
  row.failed = !usable;
  const auto assignment = derive_pred_assignment(split, gt.n());
  row.proposed = score_proposed(gt, assignment, weights);
  row.classical = score_classical(gt, split);
  if (!usable) row.flags = prediction.error.empty() ? "FAILED" : "FAILED: " + prediction.error;
  return row;
}

ScoreReport evaluate_run(const std::map<std::string, GroundTruthPacket>& gt_set,
                         const std::map<std::string, PredictionRecord>& predictions,
                         const MetricWeights& weights) {
  weights.validate();
  ScoreReport report;
  report.weights = weights;
  const PredictionRecord missing{std::nullopt, {}, true, "missing prediction"};
  for (const auto& [id, gt] : gt_set) {
    const auto it = predictions.find(id);
    report.rows.push_back(evaluate_packet(gt, it == predictions.end() ? missing : it->second, weights));
  }
  for (const auto& [id, pred] : predictions) {
    if (gt_set.contains(id)) continue;
    report.unmatched.push_back(id);
    report.warnings.push_back(fmt::format("prediction '{}' has no ground truth; excluded", id));
  }
  return report;
}

std::map<std::string, PredictionRecord> read_prediction_dir(
    const fs::path& dir, const std::map<std::string, std::size_t>& sizes) {
  if (!fs::is_directory(dir))
    throw ValidationError("PRED_UNREADABLE", dir.string(), "not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::map<std::string, PredictionRecord> out;
  for (const auto& file : files) {
    const auto id = file.stem().string();
    std::ifstream in(file, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto n = sizes.contains(id) ? sizes.at(id) : 0;
    AdapterResult raw;
    raw.ok = static_cast<bool>(in);
    raw.output = buffer.str();
    raw.error = raw.ok ? "" : "cannot read " + file.string();
    out.emplace(id, record_from_output(raw, n));
  }
  return out;
}

}  // namespace docsplit
