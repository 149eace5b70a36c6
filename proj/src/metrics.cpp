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

#include "docsplit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace docsplit {

void MetricWeights::validate() const {
  if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("weights: w must lie in [0, 1]");
  if (!(alpha >= 0.0) || !(beta >= 0.0))
    throw std::invalid_argument("weights: alpha and beta must be non-negative");
  if (std::abs(alpha + beta - 1.0) > 1e-12)
    throw std::invalid_argument("weights: alpha + beta must equal 1");
}

namespace {

// Block label per element, keyed by element id.
std::map<int, int> labels_of(const Partition& p) {
  std::map<int, int> labels;
  for (std::size_t b = 0; b < p.size(); ++b)
    for (int element : p[b])
      if (!labels.emplace(element, static_cast<int>(b)).second)
        throw ValidationError("METRIC_OVERLAP", "partition",
                              "element " + std::to_string(element) + " appears in two blocks");
  return labels;
}

struct Contingency {
  std::map<std::pair<int, int>, double> cells;
  std::map<int, double> rows;  // truth block sizes
  std::map<int, double> cols;  // predicted block sizes
  double n = 0;
};

Contingency contingency(const Partition& truth, const Partition& predicted) {
  const auto t = labels_of(truth);
  const auto p = labels_of(predicted);
  bool same = t.size() == p.size();
  for (auto ti = t.begin(), pi = p.begin(); same && ti != t.end(); ++ti, ++pi)
    same = ti->first == pi->first;
  if (!same)
    throw ValidationError("METRIC_ELEMENT_MISMATCH", "partition",
                          "partitions cover different element sets");

  Contingency c;
  for (const auto& [element, row] : t) {
    const int col = p.at(element);
    c.cells[{row, col}] += 1;
    c.rows[row] += 1;
    c.cols[col] += 1;
  }
  c.n = static_cast<double>(t.size());
  return c;
}

double pairs(double k) { return k * (k - 1) / 2; }

double entropy(const std::map<int, double>& sizes, double n) {
  double h = 0;
  for (const auto& [label, size] : sizes)
    if (size > 0) h -= (size / n) * std::log(size / n);
  return h;
}

}  // namespace

Partition effective_pred_partition(const GroundTruthPacket& gt,
                                   const PredictionAssignment& assignment) {
  if (assignment.n() != gt.n())
    throw ValidationError("METRIC_SIZE_MISMATCH", "assignment",
                          "assignment covers " + std::to_string(assignment.n()) +
                              " pages, packet has " + std::to_string(gt.n()));

  std::vector<const PageRecord*> truth(gt.n());
  for (const auto& page : gt.pages) truth.at(page.packet_position - 1) = &page;

  Partition clusters(assignment.cluster_keys.size());
  Partition singletons;
  for (std::size_t i = 0; i < assignment.n(); ++i) {
    const auto& page = assignment.pages[i];
    const int position = static_cast<int>(i) + 1;
    const bool keeps_cluster = page.status == PageStatus::kAssigned &&
                               page.doc_type == truth[i]->doc_type.code();
    if (keeps_cluster)
      clusters[page.cluster].push_back(position);
    else
      singletons.push_back({position});
  }
  std::erase_if(clusters, [](const auto& block) { return block.empty(); });
  clusters.insert(clusters.end(), singletons.begin(), singletons.end());
  return clusters;
}

double rand_index(const Partition& truth, const Partition& predicted) {
  const auto c = contingency(truth, predicted);
  if (c.n < 2) return 1.0;

  double both = 0;
  for (const auto& [cell, count] : c.cells) both += pairs(count);
  double truth_pairs = 0;
  for (const auto& [label, size] : c.rows) truth_pairs += pairs(size);
  double pred_pairs = 0;
  for (const auto& [label, size] : c.cols) pred_pairs += pairs(size);

  const double total = pairs(c.n);
  const double apart = total - truth_pairs - pred_pairs + both;
  return (both + apart) / total;
}

VMeasure v_measure(const Partition& truth, const Partition& predicted) {
  const auto c = contingency(truth, predicted);
  VMeasure out;
  if (c.n == 0) return out;

  const double h_classes = entropy(c.rows, c.n);
  const double h_clusters = entropy(c.cols, c.n);

  // H(C|K) and H(K|C) from the joint counts.
  double h_classes_given_clusters = 0;
  double h_clusters_given_classes = 0;
  for (const auto& [cell, count] : c.cells) {
    const double joint = count / c.n;
    h_classes_given_clusters -= joint * std::log(count / c.cols.at(cell.second));
    h_clusters_given_classes -= joint * std::log(count / c.rows.at(cell.first));
  }

  out.homogeneity = h_classes == 0 ? 1.0 : 1.0 - h_classes_given_clusters / h_classes;
  out.completeness = h_clusters == 0 ? 1.0 : 1.0 - h_clusters_given_classes / h_clusters;
  // Rounding can leave tiny negatives when the conditional equals the marginal.
  out.homogeneity = std::clamp(out.homogeneity, 0.0, 1.0);
  out.completeness = std::clamp(out.completeness, 0.0, 1.0);
  const double sum = out.homogeneity + out.completeness;
  out.v_measure = sum == 0 ? 0.0 : 2 * out.homogeneity * out.completeness / sum;
  return out;
}

double clustering_score(double v, double ri, double w) { return w * v + (1 - w) * ri; }

double kendall_tau_b(std::span<const double> predicted_ranks, std::span<const double> truth_ranks) {
  if (predicted_ranks.size() != truth_ranks.size())
    throw std::invalid_argument("kendall_tau_b: sequences differ in length");
  const std::size_t m = predicted_ranks.size();
  if (m < 2) throw std::invalid_argument("kendall_tau_b: need at least two elements");

  double concordant = 0, discordant = 0, tied_pred = 0, tied_truth = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dp = predicted_ranks[j] - predicted_ranks[i];
      const double dt = truth_ranks[j] - truth_ranks[i];
      if (dp == 0) tied_pred += 1;
      if (dt == 0) tied_truth += 1;
      if (dp == 0 || dt == 0) continue;
      ((dp > 0) == (dt > 0) ? concordant : discordant) += 1;
    }
  }
  const double n0 = pairs(static_cast<double>(m));
  const double denom = std::sqrt((n0 - tied_pred) * (n0 - tied_truth));
  if (denom == 0) return 0.0;
  return (concordant - discordant) / denom;
}

double ordering_score(const GroundTruthPacket& gt, const PredictionAssignment& assignment) {
  const auto layout = derive_gt_partition(gt);
  double total = 0;
  int groups = 0;
  for (const auto& order : layout.ordinal_order) {
    if (order.size() < 2) continue;
    std::vector<double> truth_ranks, claimed;
    double highest = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& page = assignment.at(order[k]);
      truth_ranks.push_back(static_cast<double>(k + 1));
      // Unassigned pages are marked with NaN and replaced by the sentinel below.
      const bool placed = page.status != PageStatus::kUnassigned;
      claimed.push_back(placed ? page.claimed_ordinal : std::nan(""));
      if (placed) highest = std::max(highest, static_cast<double>(page.claimed_ordinal));
    }
    for (auto& rank : claimed)
      if (std::isnan(rank)) rank = highest + 1;
    total += kendall_tau_b(claimed, truth_ranks);
    ++groups;
  }
  return groups == 0 ? 1.0 : total / groups;
}

double packet_score(double clustering, double ordering, const MetricWeights& weights) {
  return weights.alpha * clustering + weights.beta * ordering;
}

PacketScore score_proposed(const GroundTruthPacket& gt, const PredictionAssignment& assignment,
                           const MetricWeights& weights) {
  weights.validate();
  const auto layout = derive_gt_partition(gt);
  const auto effective = effective_pred_partition(gt, assignment);

  PacketScore s;
  s.rand_index = rand_index(layout.partition, effective);
  const auto v = v_measure(layout.partition, effective);
  s.homogeneity = v.homogeneity;
  s.completeness = v.completeness;
  s.v_measure = v.v_measure;
  s.clustering = clustering_score(s.v_measure, s.rand_index, weights.w);
  s.ordering = ordering_score(gt, assignment);
  s.packet = packet_score(s.clustering, s.ordering, weights);
  s.n_multipage_groups = static_cast<int>(std::count_if(
      layout.partition.begin(), layout.partition.end(), [](const auto& g) { return g.size() > 1; }));
  return s;
}

}  // namespace docsplit
