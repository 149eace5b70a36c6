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

#include <set>

#include "docsplit/generator.hpp"
#include "docsplit/packet.hpp"
#include "support.hpp"

using namespace docsplit;
using namespace docsplit::testing;

namespace {

const std::vector<std::string> kTypes{"invoice", "form", "letter", "memo", "email", "language"};

CorpusDocument doc(std::string name, std::string type, int pages) {
  CorpusDocument d;
  d.name = std::move(name);
  d.doc_type = DocType(type);
  d.page_count = pages;
  return d;
}

// Group sizes in group_id order.
std::vector<int> group_sizes(const GroundTruthPacket& gt) {
  std::vector<int> sizes;
  for (const auto& p : gt.pages) {
    if (static_cast<std::size_t>(p.group_id) >= sizes.size()) sizes.resize(p.group_id + 1);
    ++sizes[p.group_id];
  }
  return sizes;
}

// Every selected document appears whole, once, and matches the pool.
void check_conservation(const GroundTruthPacket& gt, const std::vector<CorpusDocument>& pool) {
  REQUIRE(audit_ground_truth(gt).is_valid());
  std::map<std::string, std::set<int>> ordinals;
  std::map<std::string, int> group_of;
  for (const auto& p : gt.pages) {
    REQUIRE(ordinals[p.original_doc_name].insert(p.local_page_ordinal).second);
    auto [it, fresh] = group_of.try_emplace(p.original_doc_name, p.group_id);
    REQUIRE(it->second == p.group_id);
  }
  for (const auto& [name, seen] : ordinals) {
    const auto it = std::find_if(pool.begin(), pool.end(), [&](const auto& d) { return d.name == name; });
    REQUIRE(it != pool.end());
    REQUIRE(static_cast<int>(seen.size()) == it->page_count);
    REQUIRE(*seen.rbegin() == it->page_count);
  }
}

}  // namespace

TEST_CASE("enum names round trip") {
  for (auto s : {Strategy::kMonoSeq, Strategy::kMonoRand, Strategy::kPolySeq, Strategy::kPolyInt,
                 Strategy::kPolyRand})
    CHECK(parse_strategy(to_string(s)) == s);
  CHECK(parse_strategy("Poly Rand") == Strategy::kPolyRand);
  CHECK(parse_profile("LARGE") == Profile::kLarge);
  CHECK(parse_split("validation") == SplitName::kValidation);
  CHECK_THROWS_AS(parse_strategy("mono_int"), std::invalid_argument);
  CHECK_THROWS_AS(parse_profile("medium"), std::invalid_argument);
  CHECK(default_range(Profile::kSmall).min == 5);
  CHECK(default_range(Profile::kLarge).max == 130);
}

TEST_CASE("config validation") {
  GeneratorConfig c;
  CHECK_NOTHROW(c.validate());
  c.target_page_range = PageRange{1, 4};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.target_page_range = PageRange{6, 5};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.target_page_range.reset();
  c.split_fractions = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.split_fractions = {0.5, 0.5};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = GeneratorConfig{};
  c.packet_count = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = GeneratorConfig{};
  c.strategy = Strategy::kMonoRand;
  c.excluded_types = {"Email"};
  CHECK(c.effective_exclusions() == std::set<std::string>{"email", "language"});
}

TEST_CASE("interleaving deals one page per document per round") {
  const std::vector<CorpusDocument> pool{doc("a", "invoice", 3), doc("b", "form", 2), doc("c", "memo", 1)};
  bool saw_example = false;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    Rng rng(seed);
    const auto gt = assemble_poly_int(pool, {6, 6}, rng, "p");
    REQUIRE(gt.n() == 6);
    check_conservation(gt, pool);
    const auto sizes = group_sizes(gt);
    // expected: rounds k = 1.. over groups in group order
    std::vector<std::pair<int, int>> expected;
    for (int k = 1; k <= 3; ++k)
      for (int g = 0; g < static_cast<int>(sizes.size()); ++g)
        if (k <= sizes[static_cast<std::size_t>(g)]) expected.emplace_back(g, k);
    std::vector<std::pair<int, int>> got;
    for (const auto& p : gt.pages) got.emplace_back(p.group_id, p.local_page_ordinal);
    REQUIRE(got == expected);

    if (sizes == std::vector<int>{3, 2, 1}) {
      saw_example = true;
      std::vector<std::string> labels;
      for (const auto& p : gt.pages) labels.push_back(p.original_doc_name + std::to_string(p.local_page_ordinal));
      CHECK(labels == std::vector<std::string>{"a1", "b1", "c1", "a2", "b2", "a3"});
    }
  }
  CHECK(saw_example);
}

TEST_CASE("target is a threshold on whole documents") {
  const std::vector<CorpusDocument> pool{doc("a", "invoice", 4), doc("b", "form", 4), doc("c", "memo", 4)};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto gt = assemble_poly_seq(pool, {5, 5}, rng, "p");
    CHECK(gt.n() == 8);  // two documents: 4 < 5 <= 8
    CHECK(group_sizes(gt) == std::vector<int>{4, 4});
  }
  Rng rng(1);
  CHECK(assemble_mono_seq({doc("a", "memo", 7)}, {2, 3}, rng, "p").n() == 7);  // overshoot kept
}

TEST_CASE("shortfall raises a generation error") {
  const std::vector<CorpusDocument> pool{doc("a", "invoice", 2), doc("b", "invoice", 1)};
  Rng rng(3);
  CHECK_THROWS_AS(assemble_poly_rand(pool, {5, 10}, rng, "p"), GenerationError);
  CHECK_THROWS_AS(assemble_mono_seq(pool, {5, 10}, rng, "p"), GenerationError);
  CHECK_THROWS_AS(assemble_mono_seq({}, {5, 10}, rng, "p"), GenerationError);

  GeneratorConfig c;
  c.strategy = Strategy::kPolySeq;
  c.split_fractions = {1.0, 0.0, 0.0};
  c.split = SplitName::kTrain;
  c.packet_count = 2;
  const auto b = generate_benchmark(pool, c);
  REQUIRE(b.packets.size() == 2);
  for (const auto& o : b.packets) {
    CHECK_FALSE(o.packet.has_value());
    CHECK(o.error.find("pool exhausted") != std::string::npos);
  }
}

TEST_CASE("assemblers conserve pages and respect the target window") {
  const auto pool = synthetic_manifest(kTypes, 12, 5, 9);
  for (auto strategy : {Strategy::kMonoSeq, Strategy::kMonoRand, Strategy::kPolySeq, Strategy::kPolyInt,
                        Strategy::kPolyRand}) {
    auto usable = pool;
    if (is_mono(strategy)) std::erase_if(usable, [](const auto& d) { return d.doc_type.code() == "language"; });
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Rng rng(seed);
      const auto gt = assemble(strategy, usable, {5, 20}, rng, "p");
      check_conservation(gt, usable);
      REQUIRE(gt.n() >= 5);
      REQUIRE(gt.n() < 20 + 5);  // last document overshoots by less than its own size
      std::set<std::string> types;
      for (const auto& p : gt.pages) types.insert(p.doc_type.code());
      if (is_mono(strategy)) REQUIRE(types.size() == 1);
      if (strategy == Strategy::kMonoSeq || strategy == Strategy::kPolySeq) REQUIRE(segments_from_gt(gt));
    }
  }
}

TEST_CASE("poly selection cycles categories before repeating") {
  const auto pool = synthetic_manifest(kTypes, 10, 1, 4);  // single-page documents
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto gt = assemble_poly_seq(pool, {14, 14}, rng, "p");
    REQUIRE(gt.n() == 14);
    // in selection order, each block of |types| documents covers every type
    for (std::size_t start = 0; start + kTypes.size() <= gt.n(); start += kTypes.size()) {
      std::set<std::string> block;
      for (std::size_t i = start; i < start + kTypes.size(); ++i) block.insert(gt.pages[i].doc_type.code());
      REQUIRE(block.size() == kTypes.size());
    }
  }
}

TEST_CASE("stratified split") {
  SUBCASE("exact quotas, disjoint, complete") {
    std::vector<CorpusDocument> manifest;
    for (int i = 0; i < 100; ++i) manifest.push_back(doc("m" + std::to_string(i), "memo", 1));
    const auto s = stratified_split(manifest, {0.55, 0.20, 0.25}, 5);
    CHECK(s.train.size() == 55);
    CHECK(s.validation.size() == 20);
    CHECK(s.test.size() == 25);
    std::set<std::string> all(s.train.begin(), s.train.end());
    all.insert(s.validation.begin(), s.validation.end());
    all.insert(s.test.begin(), s.test.end());
    CHECK(all.size() == 100);
    CHECK(s.warnings.empty());
  }
  SUBCASE("largest remainder") {
    std::vector<CorpusDocument> manifest;
    for (int i = 0; i < 7; ++i) manifest.push_back(doc("l" + std::to_string(i), "language", 1));
    const auto s = stratified_split(manifest, {0.55, 0.20, 0.25}, 5);
    // quotas 3.85 / 1.40 / 1.75
    CHECK(s.train.size() == 4);
    CHECK(s.validation.size() == 1);
    CHECK(s.test.size() == 2);
  }
  SUBCASE("tiny categories go to train") {
    const std::vector<CorpusDocument> manifest{doc("a", "memo", 1), doc("b", "memo", 1)};
    const auto s = stratified_split(manifest, {0.55, 0.20, 0.25}, 5);
    CHECK(s.train.size() == 2);
    CHECK(s.test.empty());
    REQUIRE(s.warnings.size() == 1);
    CHECK(s.warnings[0].find("memo") != std::string::npos);
  }
  SUBCASE("invalid documents are dropped") {
    auto manifest = synthetic_manifest({"memo"}, 10, 2);
    manifest[0].valid = false;
    const auto s = stratified_split(manifest, {0.55, 0.20, 0.25}, 5);
    CHECK(s.train.size() + s.validation.size() + s.test.size() == 9);
  }
  SUBCASE("duplicate names") {
    const std::vector<CorpusDocument> manifest{doc("a", "memo", 1), doc("a", "form", 1)};
    try {
      stratified_split(manifest, {0.55, 0.20, 0.25}, 5);
      FAIL("expected an error");
    } catch (const ValidationError& e) {
      CHECK(e.code() == "MANIFEST_DUP_NAME");
    }
  }
}

TEST_CASE("benchmarks draw only from the requested split") {
  const auto manifest = synthetic_manifest(kTypes, 30, 4, 2);
  GeneratorConfig c;
  c.strategy = Strategy::kPolyRand;
  c.packet_count = 40;
  c.seed = 17;
  std::map<SplitName, std::set<std::string>> used;
  for (auto split : {SplitName::kTrain, SplitName::kValidation, SplitName::kTest}) {
    c.split = split;
    const auto b = generate_benchmark(manifest, c);
    const auto& allowed = b.split.names(split);
    const std::set<std::string> allowed_set(allowed.begin(), allowed.end());
    for (const auto& o : b.packets) {
      REQUIRE(o.packet);
      for (const auto& p : o.packet->pages) {
        REQUIRE(allowed_set.contains(p.original_doc_name));
        used[split].insert(p.original_doc_name);
      }
    }
  }
  for (const auto& name : used[SplitName::kTest]) {
    CHECK_FALSE(used[SplitName::kTrain].contains(name));
    CHECK_FALSE(used[SplitName::kValidation].contains(name));
  }
}

TEST_CASE("generation is deterministic and packets are independent") {
  const auto manifest = synthetic_manifest(kTypes, 30, 4, 2);
  GeneratorConfig c;
  c.strategy = Strategy::kMonoRand;
  c.packet_count = 8;
  c.seed = 99;
  const auto a = generate_benchmark(manifest, c);
  const auto b = generate_benchmark(manifest, c);
  c.packet_count = 3;
  const auto shorter = generate_benchmark(manifest, c);
  for (std::size_t i = 0; i < a.packets.size(); ++i) {
    REQUIRE(a.packets[i].packet);
    CHECK(a.packets[i].packet_id == b.packets[i].packet_id);
    CHECK(a.packets[i].packet->pages == b.packets[i].packet->pages);
    if (i < shorter.packets.size()) CHECK(a.packets[i].packet->pages == shorter.packets[i].packet->pages);
    const auto single = generate_packet(manifest, c, static_cast<int>(i));
    REQUIRE(single.packet);
    CHECK(single.packet->pages == a.packets[i].packet->pages);
  }
  CHECK(a.packets[2].packet_id == "mono_rand-small-test-00002");
  c.seed = 100;
  CHECK(generate_packet(manifest, c, 0).packet->pages != a.packets[0].packet->pages);
}

TEST_CASE("mono benchmarks exclude the language category") {
  const auto manifest = synthetic_manifest(kTypes, 30, 4, 2);
  GeneratorConfig c;
  c.strategy = Strategy::kMonoSeq;
  c.packet_count = 100;
  c.split_fractions = {0.0, 0.0, 1.0};
  for (const auto& o : generate_benchmark(manifest, c).packets) {
    REQUIRE(o.packet);
    for (const auto& p : o.packet->pages) REQUIRE(p.doc_type.code() != "language");
  }
}
