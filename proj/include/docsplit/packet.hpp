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

#include <optional>
#include <string>
#include <vector>

#include "docsplit/model.hpp"

namespace docsplit {

// Ground-truth groups in order of first appearance in the packet.
struct GroundTruthLayout {
  Partition partition;                          // positions per group, ascending
  std::vector<std::vector<int>> ordinal_order;  // positions per group, by ordinal
  std::vector<int> group_ids;
  std::vector<DocType> doc_types;

  std::size_t group_count() const { return partition.size(); }
};

// Checks every packet invariant and collects all violations. Pointers use the
// record index in packet order, e.g. "record[2].group_id".
ValidationReport audit_ground_truth(const GroundTruthPacket& gt);

// Throws ValidationError naming the first offending field.
GroundTruthLayout derive_gt_partition(const GroundTruthPacket& gt);

// Contiguous, ordinal-ordered groups become (start, end, type) spans sorted
// by start. Returns nullopt for interleaved or shuffled packets.
std::optional<std::vector<BoundarySegment>> segments_from_gt(const GroundTruthPacket& gt);

enum class PageStatus { kAssigned, kUnassigned, kDuplicated };

struct PageAssignment {
  PageStatus status = PageStatus::kUnassigned;
  int cluster = -1;          // index into PredictionAssignment::cluster_keys
  int subdocument = -1;      // index of the first subdocument listing the page
  int claimed_ordinal = 0;   // 1-based; 0 when unassigned
  std::string doc_type;      // normalized predicted class; empty when unassigned
};

// Per-position view of a prediction. Subdocuments sharing a local_doc_id form
// one predicted cluster; a subdocument without an id is a cluster of its own.
struct PredictionAssignment {
  std::vector<PageAssignment> pages;      // index = position - 1
  std::vector<std::string> cluster_keys;  // in order of first appearance

  std::size_t n() const { return pages.size(); }
  const PageAssignment& at(int position) const { return pages.at(position - 1); }
};

// Predicted cluster index of every subdocument, numbered by first appearance.
// Subdocuments sharing a normalized local_doc_id share a cluster.
std::vector<int> cluster_of_subdocuments(const PredictedSplit& pred);

// Total over malformed input: out-of-range positions are ignored, missing
// positions become kUnassigned, repeated positions become kDuplicated and keep
// the cluster, class, and ordinal of their first occurrence.
PredictionAssignment derive_pred_assignment(const PredictedSplit& pred, std::size_t n);

// Cluster blocks of the assignment, without any class adjustment.
Partition predicted_partition(const PredictionAssignment& assignment);

// Canonical form: blocks sorted, then ordered by smallest member.
Partition canonical(Partition p);

}  // namespace docsplit
