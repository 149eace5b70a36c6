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

#include <doctest.h>

#include "docsplit/metrics.hpp"
#include "support.hpp"

using namespace docsplit;
using namespace docsplit::testing;
using doctest::Approx;

namespace {

const Partition kTruth{{1, 2, 3}, {4, 5}};

double tau(std::vector<double> x, std::vector<double> y) { return kendall_tau_b(x, y); }

PacketScore score(const PredictedSplit& pred, const GroundTruthPacket& gt = invoice_form()) {
  return score_proposed(gt, derive_pred_assignment(pred, gt.n()));
}

}  // namespace

TEST_CASE("rand index") {
  CHECK(rand_index(kTruth, kTruth) == 1.0);
  CHECK(rand_index(kTruth, {{1}, {2}, {3}, {4, 5}}) == Approx(0.7));
  CHECK(rand_index(kTruth, {{1, 2, 3, 4, 5}}) == Approx(0.4));
  CHECK(rand_index({{1}}, {{1}}) == 1.0);
  CHECK(rand_index({}, {}) == 1.0);
  CHECK_THROWS_AS(rand_index(kTruth, {{1, 2, 3, 4}}), ValidationError);
  CHECK_THROWS_AS(rand_index(kTruth, {{1, 2, 3}, {3, 4, 5}}), ValidationError);
}

TEST_CASE("v-measure") {
  const auto split = v_measure(kTruth, {{1}, {2}, {3}, {4, 5}});
  CHECK(split.v_measure == Approx(0.6713).epsilon(5e-5));
  const auto merged = v_measure(kTruth, {{1, 2, 3, 4, 5}});
  CHECK(merged.homogeneity == 0.0);
  CHECK(merged.v_measure == 0.0);
  const auto singletons = v_measure(kTruth, {{1}, {2}, {3}, {4}, {5}});
  CHECK(singletons.homogeneity == Approx(1.0));
  CHECK(singletons.completeness == Approx(0.41817).epsilon(1e-5));
  CHECK(singletons.v_measure == Approx(0.58973).epsilon(1e-5));
  CHECK(v_measure(kTruth, kTruth).v_measure == Approx(1.0));
  // one class, one cluster: both entropies vanish
  CHECK(v_measure({{1, 2}}, {{1, 2}}).v_measure == 1.0);
  CHECK_THROWS_AS(v_measure(kTruth, {{1, 2}}), ValidationError);
}

TEST_CASE("clustering and packet combination") {
  CHECK(clustering_score(0.0, 0.4, 0.5) == Approx(0.2));
  CHECK(clustering_score(1.0, 1.0, 0.3) == Approx(1.0));
  CHECK(clustering_score(0.6713, 0.7, 0.5) == Approx(0.68565));
  const MetricWeights d;
  CHECK(packet_score(0.59487, 1.0, d) == Approx(0.7974).epsilon(5e-5));
  CHECK(packet_score(1.0, -1.0, d) == Approx(0.0));
  CHECK(packet_score(1.0, -2.0 / 3.0, d) == Approx(0.1667).epsilon(5e-5));
}

TEST_CASE("metric weights") {
  CHECK_NOTHROW(MetricWeights{}.validate());
  CHECK_NOTHROW((MetricWeights{1.0, 0.3, 0.7}.validate()));
  CHECK_THROWS_AS((MetricWeights{0.5, 0.6, 0.6}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MetricWeights{1.5, 0.5, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MetricWeights{0.5, -0.5, 1.5}.validate()), std::invalid_argument);
}

TEST_CASE("kendall tau-b") {
  CHECK(tau({1, 2, 3}, {1, 2, 3}) == Approx(1.0));
  CHECK(tau({3, 2, 1}, {1, 2, 3}) == Approx(-1.0));
  CHECK(tau({1, 1, 2}, {1, 2, 3}) == Approx(0.81650).epsilon(1e-5));
  CHECK(tau({3, 1, 2}, {1, 2, 3}) == Approx(-1.0 / 3.0));
  CHECK(tau({5, 5, 5}, {1, 2, 3}) == 0.0);
  CHECK_THROWS_AS(tau({1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(tau({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("ordering score") {
  const auto gt = invoice_form();
  CHECK(score({"p", {sub("invoice", {1, 2, 3}), sub("form", {4, 5})}}).ordering == 1.0);
  // invoice claims [3,1,2] read in true order, form reversed
  CHECK(score({"p", {sub("invoice", {2, 3, 1}), sub("form", {5, 4})}}).ordering == Approx(-2.0 / 3.0));
  // merged cluster, monotone ordinals in each subdocument
  CHECK(score({"p", {sub("invoice", {1, 2, 3}, "x"), sub("form", {4, 5}, "x")}}).ordering == 1.0);
  // no multi-page group
  const auto singles = make_gt({{0, "memo", 1}, {1, "form", 1}});
  CHECK(score({"p", {sub("form", {2, 1})}}, singles).ordering == 1.0);
  CHECK(score({"p", {sub("form", {2, 1})}}, singles).n_multipage_groups == 0);
}

TEST_CASE("unassigned pages tie at the bottom") {
  // invoice pages 1,2 claimed 1,2; page 3 missing -> ranks [1,2,sentinel]
  const auto s = score({"p", {sub("invoice", {1, 2}), sub("form", {4, 5})}});
  CHECK(s.ordering == Approx(1.0));
  // page 1 missing -> [sentinel,1,2]: -1/3 against [1,2,3]
  const auto t = score({"p", {sub("invoice", {2, 3}), sub("form", {4, 5})}});
  CHECK(t.ordering == Approx((-1.0 / 3.0 + 1.0) / 2.0));
  // nothing assigned: every group fully tied -> 0
  CHECK(score({"p", {}}).ordering == 0.0);
}

TEST_CASE("effective partition isolates misclassified pages") {
  const auto gt = invoice_form();
  auto eff = [&](const PredictedSplit& p) {
    return canonical(effective_pred_partition(gt, derive_pred_assignment(p, gt.n())));
  };
  CHECK(eff({"p", {sub("form", {1, 2, 3}), sub("invoice", {4, 5})}}) ==
        Partition{{1}, {2}, {3}, {4}, {5}});
  CHECK(eff({"p", {sub("invoice", {1, 2, 3}), sub("form", {4, 5})}}) == Partition{{1, 2, 3}, {4, 5}});
  const PredictedSplit partial{"p", {sub("invoice", {1, 2}), sub("form", {3}, "invoice-01"), sub("form", {4, 5})}};
  CHECK(eff(partial) == Partition{{1, 2}, {3}, {4, 5}});
  const auto s = score(partial);
  CHECK(s.rand_index == Approx(0.8));
  CHECK(s.v_measure == Approx(0.7790).epsilon(5e-5));
  // duplicated and unassigned pages become singletons too
  CHECK(eff({"p", {sub("invoice", {1, 2, 2}), sub("form", {4, 5})}}) == Partition{{1}, {2}, {3}, {4, 5}});
}

TEST_CASE("failed prediction: all-singleton floor") {
  const auto s = score({"p", {}});
  CHECK(s.rand_index == Approx(0.6));
  CHECK(s.v_measure == Approx(0.58973).epsilon(1e-5));
  CHECK(s.packet == Approx(0.5 * s.clustering));
}

TEST_CASE("properties over random partitions") {
  Rng rng(101);
  const MetricWeights d;
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = rng.between(1, 12);
    const auto a = random_labels(rng, n, rng.between(1, 5));
    const auto b = random_labels(rng, n, rng.between(1, 5));
    // relabel b by a random permutation of label values
    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    std::vector<int> b2(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) b2[i] = perm[static_cast<std::size_t>(b[i])];

    const auto pa = from_labels(a), pb = from_labels(b), pb2 = from_labels(b2);
    auto pb_shuffled = pb;
    rng.shuffle(pb_shuffled);

    const double ri = rand_index(pa, pb);
    const auto vm = v_measure(pa, pb);
    REQUIRE(ri >= 0.0);
    REQUIRE(ri <= 1.0);
    REQUIRE(vm.v_measure >= 0.0);
    REQUIRE(vm.v_measure <= 1.0);
    REQUIRE(rand_index(pa, pb2) == Approx(ri));
    REQUIRE(rand_index(pa, pb_shuffled) == Approx(ri));
    REQUIRE(v_measure(pa, pb2).v_measure == Approx(vm.v_measure));
    REQUIRE(v_measure(pa, pb_shuffled).v_measure == Approx(vm.v_measure));
    REQUIRE(rand_index(pa, pa) == 1.0);
    REQUIRE(v_measure(pa, pa).v_measure == Approx(1.0));
    REQUIRE(vm.v_measure == Approx(brute_v_measure(a, b)));

    const double clustering = clustering_score(vm.v_measure, ri, d.w);
    const double ordering = rng.between(-1000, 1000) / 1000.0;
    const double packet = packet_score(clustering, ordering, d);
    REQUIRE(packet >= -0.5);
    REQUIRE(packet <= 1.0);
    ++checked;
  }
  CHECK(checked == 10000);
  CHECK(packet_score(0.0, -1.0, d) == -0.5);
  CHECK(packet_score(1.0, 1.0, d) == 1.0);
}

TEST_CASE("tau-b properties") {
  Rng rng(102);
  for (int trial = 0; trial < 10000; ++trial) {
    const int m = rng.between(2, 9);
    std::vector<double> s(static_cast<std::size_t>(m));
    std::iota(s.begin(), s.end(), 1.0);
    rng.shuffle(s);
    std::vector<double> rev(s.rbegin(), s.rend());
    std::vector<double> ties(static_cast<std::size_t>(m));
    for (auto& v : ties) v = static_cast<double>(rng.between(1, 3));

    REQUIRE(kendall_tau_b(s, s) == Approx(1.0));
    std::vector<double> ident(static_cast<std::size_t>(m));
    std::iota(ident.begin(), ident.end(), 1.0);
    std::vector<double> rev_ident(ident.rbegin(), ident.rend());
    REQUIRE(kendall_tau_b(rev_ident, ident) == Approx(-1.0));

    const double t = kendall_tau_b(ties, s);
    REQUIRE(t >= -1.0 - 1e-12);
    REQUIRE(t <= 1.0 + 1e-12);
    // strictly increasing transforms leave tau unchanged
    std::vector<double> warped(ties.size());
    for (std::size_t i = 0; i < ties.size(); ++i) warped[i] = std::exp(ties[i]) * 3 + 7;
    REQUIRE(kendall_tau_b(warped, s) == Approx(t));
    std::vector<double> s_warped(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) s_warped[i] = s[i] * s[i] * s[i];
    REQUIRE(kendall_tau_b(ties, s_warped) == Approx(t));
  }
}
