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

// Packet-splitting quality metrics: clustering agreement (Rand index and
// V-measure), within-document ordering (tie-corrected Kendall tau), and the
// composite packet score
//
//   clustering = w * V + (1 - w) * RI
//   packet     = alpha * clustering + beta * ordering,   alpha + beta = 1
//
// With the default weights the packet score lies in [-0.5, 1].

#include <span>

#include "docsplit/model.hpp"
#include "docsplit/packet.hpp"

namespace docsplit {

struct MetricWeights {
  double w = 0.5;
  double alpha = 0.5;
  double beta = 0.5;

  // Throws std::invalid_argument unless w in [0,1], alpha, beta >= 0 and
  // |alpha + beta - 1| <= 1e-12.
  void validate() const;
};

struct VMeasure {
  double homogeneity = 1.0;
  double completeness = 1.0;
  double v_measure = 1.0;
};

struct PacketScore {
  double rand_index = 1.0;
  double homogeneity = 1.0;
  double completeness = 1.0;
  double v_measure = 1.0;
  double clustering = 1.0;
  double ordering = 1.0;
  double packet = 1.0;
  int n_multipage_groups = 0;
};

// Predicted clusters with every misclassified, unassigned, or duplicated page
// moved to a singleton of its own. Class comparison uses normalized codes.
Partition effective_pred_partition(const GroundTruthPacket& gt,
                                   const PredictionAssignment& assignment);

// (a + b) / C(n, 2). Defined as 1 when n < 2. Throws ValidationError
// (METRIC_ELEMENT_MISMATCH) when the partitions cover different elements.
double rand_index(const Partition& truth, const Partition& predicted);

// Natural-log entropies. h = 1 when H(classes) = 0, c = 1 when
// H(clusters) = 0, V = 0 when h + c = 0.
VMeasure v_measure(const Partition& truth, const Partition& predicted);

double clustering_score(double v, double ri, double w);

// Kendall tau-b: (nc - nd) / sqrt((n0 - n1)(n0 - n2)). Equals tau-a on
// tie-free input; 0 when either sequence is entirely tied. Requires equal
// lengths >= 2 (std::invalid_argument otherwise).
double kendall_tau_b(std::span<const double> predicted_ranks, std::span<const double> truth_ranks);

// Mean tau-b over ground-truth groups with more than one page, reading each
// page's claimed ordinal in true ordinal order. Unassigned pages share a
// sentinel rank above every real ordinal. 1 when no group has two pages.
double ordering_score(const GroundTruthPacket& gt, const PredictionAssignment& assignment);

double packet_score(double clustering, double ordering, const MetricWeights& weights);

PacketScore score_proposed(const GroundTruthPacket& gt, const PredictionAssignment& assignment,
                           const MetricWeights& weights = {});

}  // namespace docsplit
