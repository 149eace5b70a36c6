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

#include "docsplit/classical.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace docsplit {

namespace {

// Everything a predicted cluster claims, duplicates included.
struct ClusterClaim {
  std::set<std::string> doc_types;
  std::vector<std::pair<int, int>> entries;  // (position, claimed ordinal)
};

std::vector<ClusterClaim> collect_claims(const PredictedSplit& pred) {
  const auto cluster_of = cluster_of_subdocuments(pred);
  std::vector<ClusterClaim> claims;
  for (std::size_t s = 0; s < pred.subdocuments.size(); ++s) {
    const auto& sub = pred.subdocuments[s];
    const auto c = static_cast<std::size_t>(cluster_of[s]);
    if (c >= claims.size()) claims.resize(c + 1);
    claims[c].doc_types.insert(normalize_type_code(sub.doc_type_id));
    const bool explicit_ordinals =
        sub.claimed_ordinals && sub.claimed_ordinals->size() == sub.member_positions.size();
    for (std::size_t k = 0; k < sub.member_positions.size(); ++k) {
      const int ordinal = explicit_ordinals ? (*sub.claimed_ordinals)[k] : static_cast<int>(k) + 1;
      claims[c].entries.emplace_back(sub.member_positions[k], ordinal);
    }
  }
  return claims;
}

bool claims_group(const ClusterClaim& claim, const DocType& type,
                  const std::vector<int>& positions) {
  if (claim.doc_types.size() != 1 || *claim.doc_types.begin() != type.code()) return false;
  if (claim.entries.size() != positions.size()) return false;

  std::vector<int> claimed_positions, ordinals;
  for (const auto& [position, ordinal] : claim.entries) {
    claimed_positions.push_back(position);
    ordinals.push_back(ordinal);
  }
  std::sort(claimed_positions.begin(), claimed_positions.end());
  if (claimed_positions != positions) return false;

  std::sort(ordinals.begin(), ordinals.end());
  for (std::size_t k = 0; k < ordinals.size(); ++k)
    if (ordinals[k] != static_cast<int>(k) + 1) return false;
  return true;
}

double fraction(std::size_t hits, std::size_t total) {
  return total == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

double page_accuracy(const GroundTruthPacket& gt, const PredictionAssignment& assignment) {
  std::size_t correct = 0;
  for (const auto& page : gt.pages) {
    const auto& predicted = assignment.at(page.packet_position);
    if (predicted.status != PageStatus::kUnassigned && predicted.doc_type == page.doc_type.code())
      ++correct;
  }
  return fraction(correct, gt.n());
}

std::vector<int> match_groups(const GroundTruthPacket& gt, const PredictedSplit& pred) {
  const auto layout = derive_gt_partition(gt);
  const auto claims = collect_claims(pred);
  std::vector<bool> used(claims.size(), false);
  std::vector<int> matched(layout.group_count(), -1);
  for (std::size_t g = 0; g < layout.group_count(); ++g) {
    for (std::size_t c = 0; c < claims.size(); ++c) {
      if (used[c] || !claims_group(claims[c], layout.doc_types[g], layout.partition[g])) continue;
      used[c] = true;
      matched[g] = static_cast<int>(c);
      break;
    }
  }
  return matched;
}

double page_split_accuracy(const GroundTruthPacket& gt, const PredictedSplit& pred) {
  const auto matched = match_groups(gt, pred);
  return fraction(std::count_if(matched.begin(), matched.end(), [](int c) { return c >= 0; }),
                  matched.size());
}

double page_split_order_accuracy(const GroundTruthPacket& gt, const PredictedSplit& pred) {
  const auto layout = derive_gt_partition(gt);
  const auto matched = match_groups(gt, pred);
  const auto claims = collect_claims(pred);

  std::size_t hits = 0;
  for (std::size_t g = 0; g < layout.group_count(); ++g) {
    if (matched[g] < 0) continue;
    std::map<int, int> ordinal_at;
    for (const auto& [position, ordinal] : claims[matched[g]].entries) ordinal_at[position] = ordinal;
    const auto& order = layout.ordinal_order[g];
    bool in_order = true;
    for (std::size_t k = 0; k < order.size() && in_order; ++k)
      in_order = ordinal_at.at(order[k]) == static_cast<int>(k) + 1;
    if (in_order) ++hits;
  }
  return fraction(hits, layout.group_count());
}

ClassicalScore score_classical(const GroundTruthPacket& gt, const PredictedSplit& pred) {
  ClassicalScore s;
  s.page_accuracy = page_accuracy(gt, derive_pred_assignment(pred, gt.n()));
  s.page_split_accuracy = page_split_accuracy(gt, pred);
  s.page_split_order_accuracy = page_split_order_accuracy(gt, pred);
  return s;
}

}  // namespace docsplit
