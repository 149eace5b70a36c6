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

// Readers and writers for the interchange formats.
//
// Ground truth: one JSON object per line, one line per page.
//
//   {"doc_type":"invoice","original_doc_name":"invoice_017",
//    "parent_doc_name":"poly_seq-small-test-00000","local_doc_id":"invoice-01",
//    "page":1,"image_path":null,"text_path":"text/invoice_017/page_0001.txt",
//    "group_id":0,"local_doc_id_page_ordinal":1}
//
// "page" is the 1-based packet position.
//
// Prediction: a JSON object with a "subdocuments" array. page_ordinals are
// 1-based packet positions listed in claimed reading order. An optional
// "claimed_ordinals" array, parallel to page_ordinals, states each page's
// within-document page number explicitly.
//
//   {"packet_id":"...","subdocuments":[
//     {"doc_type_id":"invoice","page_ordinals":[1,4],"local_doc_id":"invoice-01"}]}
//
// Baseline directory: input/<file> plus
// baseline/<file>/sections/<k>/result.json holding document_class.type and
// split_document.page_indices (zero-based).

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "docsplit/classical.hpp"
#include "docsplit/metrics.hpp"
#include "docsplit/model.hpp"

namespace docsplit {

// ---- ground truth ----------------------------------------------------------

// Collects every problem; value is set only when the packet is valid. Pages
// come back sorted by position. An empty packet_id is taken from the records.
Parsed<GroundTruthPacket> parse_ground_truth(std::string_view jsonl);
// Throws ValidationError with the first problem.
GroundTruthPacket read_ground_truth(const std::filesystem::path& path);
std::string format_ground_truth(const GroundTruthPacket& gt);
void write_ground_truth(const std::filesystem::path& path, const GroundTruthPacket& gt);

// Every *.jsonl file in dir, keyed by packet id. Throws on the first bad file
// or on two files claiming the same packet id.
std::map<std::string, GroundTruthPacket> read_ground_truth_dir(const std::filesystem::path& dir);

// ---- predictions -----------------------------------------------------------

// Never throws. A missing or unparseable envelope yields no value and a single
// PRED_ENVELOPE error; everything else becomes findings on a usable split.
// Markdown code fences, surrounding prose, and trailing commas are tolerated.
// `n` > 0 enables range and coverage checks.
Parsed<PredictedSplit> parse_prediction(std::string_view text, std::size_t n = 0,
                                        const Taxonomy& taxonomy = Taxonomy::standard());
std::string format_prediction(const PredictedSplit& pred);
void write_prediction(const std::filesystem::path& path, const PredictedSplit& pred);

// ---- baseline directory ----------------------------------------------------

// Keyed by input file name. Section k becomes group k-1; a section's list
// order gives its pages' ordinals. Problems are reported per file.
std::map<std::string, Parsed<GroundTruthPacket>> read_baseline_dir(
    const std::filesystem::path& root);

// Inverse of read_baseline_dir for packets it can express: creates an empty
// input/<packet_id> placeholder and one section per group.
void write_baseline_dir(const std::filesystem::path& root,
                        const std::vector<GroundTruthPacket>& packets);

// ---- reports ---------------------------------------------------------------

struct ScoreRow {
  std::string packet_id;
  std::size_t pages = 0;
  PacketScore proposed;
  ClassicalScore classical;
  bool failed = false;  // adapter failure or missing prediction, scored as unassigned
  std::string flags;    // free text, e.g. KNOWN-DIVERGENT
};

struct ScoreReport {
  MetricWeights weights;
  std::vector<ScoreRow> rows;
  std::vector<std::string> unmatched;  // prediction ids with no ground truth
  std::vector<std::string> warnings;

  // Unweighted per-packet means; nullopt when there are no rows.
  std::optional<ScoreRow> aggregate() const;
};

enum class ReportFormat { kJson, kCsv };

ReportFormat parse_report_format(std::string_view name);

// Numbers carry four decimals. CSV has one row per packet and a final
// "__aggregate__" row; an empty report is just the header.
std::string format_report(const ScoreReport& report, ReportFormat format);
void write_report(const std::filesystem::path& path, const ScoreReport& report,
                  ReportFormat format);

}  // namespace docsplit
