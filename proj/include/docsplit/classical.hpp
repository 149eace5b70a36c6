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

// Exact-match accuracies at three strictness levels.
//
// Page accuracy is per page. Page+Split and Page+Split+Order are per
// ground-truth group: a group passes Page+Split when some predicted cluster
// has its class, exactly its page set, and claims the ordinals {1..|g|} once
// each. It additionally passes Page+Split+Order when those claims, read in
// true page order, are exactly 1, 2, ..., |g|.

#include "docsplit/model.hpp"
#include "docsplit/packet.hpp"

namespace docsplit {

struct ClassicalScore {
  double page_accuracy = 1.0;
  double page_split_accuracy = 1.0;
  double page_split_order_accuracy = 1.0;
};

double page_accuracy(const GroundTruthPacket& gt, const PredictionAssignment& assignment);

// For each ground-truth group (in first-appearance order) the predicted
// cluster matched to it, or -1. Clusters are tried in order of first
// appearance; each matches at most one group.
std::vector<int> match_groups(const GroundTruthPacket& gt, const PredictedSplit& pred);

double page_split_accuracy(const GroundTruthPacket& gt, const PredictedSplit& pred);
double page_split_order_accuracy(const GroundTruthPacket& gt, const PredictedSplit& pred);

ClassicalScore score_classical(const GroundTruthPacket& gt, const PredictedSplit& pred);

}  // namespace docsplit
