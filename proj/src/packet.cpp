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

#include "docsplit/packet.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace docsplit {

bool ValidationReport::has_error(std::string_view code) const {
  return std::any_of(errors.begin(), errors.end(), [&](const Finding& f) { return f.code == code; });
}

bool ValidationReport::has_warning(std::string_view code) const {
  return std::any_of(warnings.begin(), warnings.end(),
                     [&](const Finding& f) { return f.code == code; });
}

void ValidationReport::merge(const ValidationReport& other) {
  errors.insert(errors.end(), other.errors.begin(), other.errors.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

namespace {

std::string record_ptr(std::size_t index, const char* field) {
  return "record[" + std::to_string(index) + "]." + field;
}

}  // namespace

ValidationReport audit_ground_truth(const GroundTruthPacket& gt) {
  ValidationReport report;
  const auto n = static_cast<int>(gt.n());

  std::vector<int> seen_at(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t i = 0; i < gt.pages.size(); ++i) {
    const auto& page = gt.pages[i];
    if (page.doc_type.empty())
      report.error("GT_MISSING_FIELD", record_ptr(i, "doc_type"), "empty document type");
    if (!gt.packet_id.empty() && page.parent_doc_name != gt.packet_id)
      report.error("GT_MIXED_PACKET", record_ptr(i, "parent_doc_name"),
                   "'" + page.parent_doc_name + "' differs from packet '" + gt.packet_id + "'");
    if (page.group_id < 0)
      report.error("GT_BAD_GROUP", record_ptr(i, "group_id"), "group_id must be >= 0");

    const int pos = page.packet_position;
    if (pos < 1 || pos > n) {
      report.error("GT_POSITION_GAP", record_ptr(i, "page"),
                   "position " + std::to_string(pos) + " outside 1.." + std::to_string(n));
    } else if (seen_at[pos] >= 0) {
      report.error("GT_DUP_POSITION", record_ptr(i, "page"),
                   "position " + std::to_string(pos) + " already used by record[" +
                       std::to_string(seen_at[pos]) + "]");
    } else {
      seen_at[pos] = static_cast<int>(i);
    }
  }

  struct GroupInfo {
    std::size_t first_record;
    std::vector<std::pair<int, std::size_t>> ordinals;  // (ordinal, record)
  };
  std::map<int, GroupInfo> groups;
  for (std::size_t i = 0; i < gt.pages.size(); ++i) {
    const auto& page = gt.pages[i];
    auto [it, inserted] = groups.try_emplace(page.group_id, GroupInfo{i, {}});
    const auto& first = gt.pages[it->second.first_record];
    if (!inserted) {
      if (page.doc_type != first.doc_type)
        report.error("GT_TYPE_CONFLICT", record_ptr(i, "doc_type"),
                     "group " + std::to_string(page.group_id) + " mixes '" +
                         first.doc_type.code() + "' and '" + page.doc_type.code() + "'");
      if (page.original_doc_name != first.original_doc_name)
        report.error("GT_NAME_CONFLICT", record_ptr(i, "original_doc_name"),
                     "group " + std::to_string(page.group_id) + " mixes source documents");
    }
    it->second.ordinals.emplace_back(page.local_page_ordinal, i);
  }

  for (auto& [group_id, info] : groups) {
    std::sort(info.ordinals.begin(), info.ordinals.end());
    const int size = static_cast<int>(info.ordinals.size());
    for (std::size_t k = 0; k < info.ordinals.size(); ++k) {
      const auto [ordinal, record] = info.ordinals[k];
      if (k > 0 && info.ordinals[k - 1].first == ordinal) {
        report.error("GT_DUP_ORDINAL", record_ptr(record, "local_doc_id_page_ordinal"),
                     "ordinal " + std::to_string(ordinal) + " repeated in group " +
                         std::to_string(group_id));
      } else if (ordinal < 1 || ordinal > size) {
        report.error("GT_ORDINAL_GAP", record_ptr(record, "local_doc_id_page_ordinal"),
                     "ordinal " + std::to_string(ordinal) + " outside 1.." +
                         std::to_string(size) + " for group " + std::to_string(group_id));
      }
    }
  }
  return report;
}

GroundTruthLayout derive_gt_partition(const GroundTruthPacket& gt) {
  const auto report = audit_ground_truth(gt);
  if (!report.is_valid()) {
    const auto& first = report.errors.front();
    throw ValidationError(first.code, first.pointer, first.message);
  }

  std::vector<const PageRecord*> by_position(gt.n());
  for (const auto& page : gt.pages) by_position[page.packet_position - 1] = &page;

  GroundTruthLayout layout;
  std::unordered_map<int, std::size_t> slot;
  std::vector<std::vector<std::pair<int, int>>> ordinal_pairs;
  for (const PageRecord* page : by_position) {
    auto [it, inserted] = slot.try_emplace(page->group_id, layout.partition.size());
    if (inserted) {
      layout.partition.emplace_back();
      layout.group_ids.push_back(page->group_id);
      layout.doc_types.push_back(page->doc_type);
      ordinal_pairs.emplace_back();
    }
    layout.partition[it->second].push_back(page->packet_position);
    ordinal_pairs[it->second].emplace_back(page->local_page_ordinal, page->packet_position);
  }
  for (auto& pairs : ordinal_pairs) {
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> order;
    order.reserve(pairs.size());
    for (const auto& [ordinal, position] : pairs) order.push_back(position);
    layout.ordinal_order.push_back(std::move(order));
  }
  return layout;
}

std::optional<std::vector<BoundarySegment>> segments_from_gt(const GroundTruthPacket& gt) {
  if (!audit_ground_truth(gt).is_valid()) return std::nullopt;
  const auto layout = derive_gt_partition(gt);

  std::vector<BoundarySegment> segments;
  segments.reserve(layout.group_count());
  for (std::size_t g = 0; g < layout.group_count(); ++g) {
    const auto& order = layout.ordinal_order[g];
    for (std::size_t k = 1; k < order.size(); ++k)
      if (order[k] != order[k - 1] + 1) return std::nullopt;
    segments.push_back({order.front(), order.back(), layout.doc_types[g]});
  }
  std::sort(segments.begin(), segments.end(),
            [](const BoundarySegment& a, const BoundarySegment& b) { return a.start < b.start; });
  return segments;
}

std::vector<int> cluster_of_subdocuments(const PredictedSplit& pred) {
  std::vector<int> clusters;
  clusters.reserve(pred.subdocuments.size());
  std::unordered_map<std::string, int> by_key;
  int next = 0;
  for (const auto& sub : pred.subdocuments) {
    if (sub.local_doc_id.empty()) {
      clusters.push_back(next++);
      continue;
    }
    auto [it, inserted] = by_key.try_emplace(normalize_type_code(sub.local_doc_id), next);
    if (inserted) ++next;
    clusters.push_back(it->second);
  }
  return clusters;
}

PredictionAssignment derive_pred_assignment(const PredictedSplit& pred, std::size_t n) {
  PredictionAssignment out;
  out.pages.resize(n);

  const auto clusters = cluster_of_subdocuments(pred);
  for (std::size_t s = 0; s < pred.subdocuments.size(); ++s) {
    const auto& sub = pred.subdocuments[s];
    const int cluster = clusters[s];
    if (static_cast<std::size_t>(cluster) == out.cluster_keys.size())
      out.cluster_keys.push_back(sub.local_doc_id.empty() ? "#" + std::to_string(s)
                                                          : normalize_type_code(sub.local_doc_id));

    const bool explicit_ordinals =
        sub.claimed_ordinals && sub.claimed_ordinals->size() == sub.member_positions.size();
    const auto doc_type = normalize_type_code(sub.doc_type_id);
    for (std::size_t k = 0; k < sub.member_positions.size(); ++k) {
      const int pos = sub.member_positions[k];
      if (pos < 1 || static_cast<std::size_t>(pos) > n) continue;
      auto& page = out.pages[pos - 1];
      if (page.status != PageStatus::kUnassigned) {
        page.status = PageStatus::kDuplicated;
        continue;
      }
      page.status = PageStatus::kAssigned;
      page.cluster = cluster;
      page.subdocument = static_cast<int>(s);
      page.claimed_ordinal = explicit_ordinals ? (*sub.claimed_ordinals)[k] : static_cast<int>(k) + 1;
      page.doc_type = doc_type;
    }
  }
  return out;
}

Partition predicted_partition(const PredictionAssignment& assignment) {
  Partition blocks(assignment.cluster_keys.size());
  for (std::size_t i = 0; i < assignment.n(); ++i) {
    const auto& page = assignment.pages[i];
    if (page.cluster >= 0) blocks[page.cluster].push_back(static_cast<int>(i) + 1);
  }
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return blocks;
}

Partition canonical(Partition p) {
  for (auto& block : p) std::sort(block.begin(), block.end());
  std::erase_if(p, [](const auto& b) { return b.empty(); });
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace docsplit
