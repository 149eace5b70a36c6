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

#include "docsplit/generator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

namespace docsplit {

namespace {

constexpr std::array<std::string_view, 5> kStrategyNames{"mono_seq", "mono_rand", "poly_seq",
                                                         "poly_int", "poly_rand"};
constexpr std::array<std::string_view, 2> kProfileNames{"small", "large"};
constexpr std::array<std::string_view, 3> kSplitNames{"train", "validation", "test"};

template <class Enum, std::size_t N>
Enum parse_enum(std::string_view name, const std::array<std::string_view, N>& names,
                const char* what) {
  const auto code = normalize_type_code(name);
  for (std::size_t i = 0; i < N; ++i)
    if (names[i] == code) return static_cast<Enum>(i);
  throw std::invalid_argument(fmt::format("unknown {} '{}'", what, name));
}

using Selection = std::vector<const CorpusDocument*>;
// (index into selection, 1-based page ordinal)
using Layout = std::vector<std::pair<std::size_t, int>>;

[[noreturn]] void shortfall(int available, PageRange range) {
  throw GenerationError(fmt::format(
      "pool exhausted: {} pages selectable, minimum packet size is {} (short by {})", available,
      range.min, range.min - available));
}

std::map<std::string, std::vector<const CorpusDocument*>> by_category(
    const std::vector<CorpusDocument>& pool) {
  std::map<std::string, std::vector<const CorpusDocument*>> out;
  for (const auto& doc : pool) out[doc.doc_type.code()].push_back(&doc);
  return out;
}

Selection select_poly(const std::vector<CorpusDocument>& pool, PageRange range, Rng& rng) {
  auto remaining = by_category(pool);
  const int target = rng.between(range.min, range.max);

  Selection chosen;
  int pages = 0;
  std::vector<std::string> cycle;
  for (const auto& [code, docs] : remaining) cycle.push_back(code);

  while (pages < target) {
    std::vector<std::string> candidates;
    for (const auto& code : cycle)
      if (!remaining[code].empty()) candidates.push_back(code);
    if (candidates.empty()) {
      // Start a new cycle over every category that still has documents.
      cycle.clear();
      for (const auto& [code, docs] : remaining)
        if (!docs.empty()) cycle.push_back(code);
      if (cycle.empty()) break;
      continue;
    }
    const auto code = candidates[rng.below(candidates.size())];
    std::erase(cycle, code);
    auto& docs = remaining[code];
    const auto pick = static_cast<std::ptrdiff_t>(rng.below(docs.size()));
    chosen.push_back(docs[pick]);
    docs.erase(docs.begin() + pick);
    pages += chosen.back()->page_count;
  }
  if (pages < range.min) shortfall(pages, range);
  return chosen;
}

Selection select_mono(const std::vector<CorpusDocument>& pool, PageRange range, Rng& rng) {
  const auto categories = by_category(pool);
  const int target = rng.between(range.min, range.max);

  std::vector<std::string> untried;
  for (const auto& [code, docs] : categories) untried.push_back(code);

  int best = 0;
  while (!untried.empty()) {
    const auto pick = static_cast<std::ptrdiff_t>(rng.below(untried.size()));
    const auto code = untried[pick];
    untried.erase(untried.begin() + pick);

    auto docs = categories.at(code);
    rng.shuffle(docs);
    Selection chosen;
    int pages = 0;
    for (const auto* doc : docs) {
      if (pages >= target) break;
      chosen.push_back(doc);
      pages += doc->page_count;
    }
    if (pages >= range.min) return chosen;
    best = std::max(best, pages);
  }
  shortfall(best, range);
}

Layout sequential(const Selection& docs) {
  Layout layout;
  for (std::size_t d = 0; d < docs.size(); ++d)
    for (int k = 1; k <= docs[d]->page_count; ++k) layout.emplace_back(d, k);
  return layout;
}

Layout round_robin(const Selection& docs) {
  Layout layout;
  int longest = 0;
  for (const auto* doc : docs) longest = std::max(longest, doc->page_count);
  for (int k = 1; k <= longest; ++k)
    for (std::size_t d = 0; d < docs.size(); ++d)
      if (k <= docs[d]->page_count) layout.emplace_back(d, k);
  return layout;
}

// Numbers groups and local_doc_ids by first appearance in the final layout.
GroundTruthPacket finalize(const Selection& docs, const Layout& layout, const std::string& packet_id) {
  GroundTruthPacket gt;
  gt.packet_id = packet_id;
  std::unordered_map<std::size_t, int> group_of;
  std::vector<std::string> local_id_of(docs.size());
  std::map<std::string, int> per_type;

  for (const auto& [d, ordinal] : layout) {
    const auto* doc = docs[d];
    auto [it, inserted] = group_of.try_emplace(d, static_cast<int>(group_of.size()));
    if (inserted)
      local_id_of[d] = fmt::format("{}-{:02d}", doc->doc_type.code(), ++per_type[doc->doc_type.code()]);

    PageRecord page;
    page.parent_doc_name = packet_id;
    page.packet_position = static_cast<int>(gt.pages.size()) + 1;
    page.doc_type = doc->doc_type;
    page.original_doc_name = doc->name;
    page.local_doc_id = local_id_of[d];
    page.group_id = it->second;
    page.local_page_ordinal = ordinal;
    if (!doc->image_paths.empty()) page.image_path = doc->image_paths.at(ordinal - 1);
    if (!doc->text_paths.empty()) page.text_path = doc->text_paths.at(ordinal - 1);
    gt.pages.push_back(std::move(page));
  }
  return gt;
}

void require_pool(const std::vector<CorpusDocument>& pool) {
  if (pool.empty()) throw GenerationError("document pool is empty");
}

}  // namespace

std::string_view to_string(Strategy s) { return kStrategyNames.at(static_cast<std::size_t>(s)); }
std::string_view to_string(Profile p) { return kProfileNames.at(static_cast<std::size_t>(p)); }
std::string_view to_string(SplitName s) { return kSplitNames.at(static_cast<std::size_t>(s)); }

Strategy parse_strategy(std::string_view name) {
  return parse_enum<Strategy>(name, kStrategyNames, "strategy");
}
Profile parse_profile(std::string_view name) {
  return parse_enum<Profile>(name, kProfileNames, "profile");
}
SplitName parse_split(std::string_view name) {
  return parse_enum<SplitName>(name, kSplitNames, "split");
}

bool is_mono(Strategy s) { return s == Strategy::kMonoSeq || s == Strategy::kMonoRand; }

PageRange default_range(Profile profile) {
  return profile == Profile::kSmall ? PageRange{5, 20} : PageRange{40, 130};
}

std::set<std::string> GeneratorConfig::effective_exclusions() const {
  std::set<std::string> out;
  for (const auto& t : excluded_types) out.insert(normalize_type_code(t));
  if (is_mono(strategy)) out.insert("language");
  return out;
}

void GeneratorConfig::validate() const {
  const auto r = range();
  if (r.min < 2) throw std::invalid_argument("target page range minimum must be >= 2");
  if (r.max < r.min) throw std::invalid_argument("target page range is empty");
  if (packet_count < 1) throw std::invalid_argument("packet_count must be >= 1");
  if (split_fractions.size() != 3) throw std::invalid_argument("need three split fractions");
  double sum = 0;
  for (double f : split_fractions) {
    if (!(f >= 0)) throw std::invalid_argument("split fractions must be non-negative");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("split fractions must sum to 1");
}

const std::vector<std::string>& SplitAssignment::names(SplitName s) const {
  switch (s) {
    case SplitName::kTrain: return train;
    case SplitName::kValidation: return validation;
    case SplitName::kTest: break;
  }
  return test;
}

SplitAssignment stratified_split(const std::vector<CorpusDocument>& manifest,
                                 const std::vector<double>& fractions, std::uint64_t seed) {
  if (fractions.size() != 3) throw std::invalid_argument("need three split fractions");

  std::map<std::string, std::vector<std::string>> categories;
  std::set<std::string> names;
  for (const auto& doc : manifest) {
    if (!names.insert(doc.name).second)
      throw ValidationError("MANIFEST_DUP_NAME", doc.name, "document name listed twice");
    if (doc.valid) categories[doc.doc_type.code()].push_back(doc.name);
  }

  SplitAssignment out;
  std::array<std::vector<std::string>*, 3> targets{&out.train, &out.validation, &out.test};
  std::uint64_t stream = 0;
  for (auto& [code, docs] : categories) {
    auto rng = Rng::stream(seed, stream++);
    rng.shuffle(docs);
    const std::size_t n = docs.size();
    if (n < 3) {
      out.warnings.push_back(fmt::format(
          "category '{}' has {} document(s); all assigned to train", code, n));
      out.train.insert(out.train.end(), docs.begin(), docs.end());
      continue;
    }

    // Largest remainder: floor the quotas, then hand leftover documents to
    // the largest fractional parts (earlier split wins ties).
    std::array<std::size_t, 3> counts{};
    std::array<double, 3> remainders{};
    std::size_t assigned = 0;
    for (std::size_t s = 0; s < 3; ++s) {
      const double quota = static_cast<double>(n) * fractions[s];
      counts[s] = static_cast<std::size_t>(std::floor(quota + 1e-9));
      remainders[s] = quota - static_cast<double>(counts[s]);
      assigned += counts[s];
    }
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
    for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++counts[order[k % 3]];

    auto it = docs.begin();
    for (std::size_t s = 0; s < 3; ++s) {
      targets[s]->insert(targets[s]->end(), it, it + static_cast<std::ptrdiff_t>(counts[s]));
      it += static_cast<std::ptrdiff_t>(counts[s]);
    }
  }
  return out;
}

GroundTruthPacket assemble_mono_seq(const std::vector<CorpusDocument>& pool, PageRange range,
                                    Rng& rng, const std::string& packet_id) {
  require_pool(pool);
  const auto docs = select_mono(pool, range, rng);
  return finalize(docs, sequential(docs), packet_id);
}

GroundTruthPacket assemble_mono_rand(const std::vector<CorpusDocument>& pool, PageRange range,
                                     Rng& rng, const std::string& packet_id) {
  require_pool(pool);
  const auto docs = select_mono(pool, range, rng);
  auto layout = sequential(docs);
  rng.shuffle(layout);
  return finalize(docs, layout, packet_id);
}

GroundTruthPacket assemble_poly_seq(const std::vector<CorpusDocument>& pool, PageRange range,
                                    Rng& rng, const std::string& packet_id) {
  require_pool(pool);
  const auto docs = select_poly(pool, range, rng);
  return finalize(docs, sequential(docs), packet_id);
}

GroundTruthPacket assemble_poly_int(const std::vector<CorpusDocument>& pool, PageRange range,
                                    Rng& rng, const std::string& packet_id) {
  require_pool(pool);
  const auto docs = select_poly(pool, range, rng);
  return finalize(docs, round_robin(docs), packet_id);
}

GroundTruthPacket assemble_poly_rand(const std::vector<CorpusDocument>& pool, PageRange range,
                                     Rng& rng, const std::string& packet_id) {
  require_pool(pool);
  const auto docs = select_poly(pool, range, rng);
  auto layout = sequential(docs);
  rng.shuffle(layout);
  return finalize(docs, layout, packet_id);
}

GroundTruthPacket assemble(Strategy strategy, const std::vector<CorpusDocument>& pool,
                           PageRange range, Rng& rng, const std::string& packet_id) {
  switch (strategy) {
    case Strategy::kMonoSeq: return assemble_mono_seq(pool, range, rng, packet_id);
    case Strategy::kMonoRand: return assemble_mono_rand(pool, range, rng, packet_id);
    case Strategy::kPolySeq: return assemble_poly_seq(pool, range, rng, packet_id);
    case Strategy::kPolyInt: return assemble_poly_int(pool, range, rng, packet_id);
    case Strategy::kPolyRand: break;
  }
  return assemble_poly_rand(pool, range, rng, packet_id);
}

std::string packet_id_for(const GeneratorConfig& config, int index) {
  return fmt::format("{}-{}-{}-{:05d}", to_string(config.strategy), to_string(config.profile),
                     to_string(config.split), index);
}

namespace {

std::vector<CorpusDocument> build_pool(const std::vector<CorpusDocument>& manifest,
                                       const GeneratorConfig& config, const SplitAssignment& split) {
  const auto& names = split.names(config.split);
  const std::set<std::string> members(names.begin(), names.end());
  const auto excluded = config.effective_exclusions();
  std::vector<CorpusDocument> pool;
  for (const auto& doc : manifest)
    if (members.contains(doc.name) && !excluded.contains(doc.doc_type.code())) pool.push_back(doc);
  return pool;
}

PacketOutcome run_one(const std::vector<CorpusDocument>& pool, const GeneratorConfig& config,
                      int index) {
  PacketOutcome outcome;
  outcome.index = index;
  outcome.packet_id = packet_id_for(config, index);
  auto rng = Rng::stream(config.seed, static_cast<std::uint64_t>(index));
  try {
    outcome.packet = assemble(config.strategy, pool, config.range(), rng, outcome.packet_id);
  } catch (const GenerationError& e) {
    outcome.error = fmt::format("packet {}: {}", index, e.what());
  }
  return outcome;
}

}  // namespace

Benchmark generate_benchmark(const std::vector<CorpusDocument>& manifest,
                             const GeneratorConfig& config) {
  config.validate();
  Benchmark bench;
  bench.config = config;
  bench.split = stratified_split(manifest, config.split_fractions, config.seed);
  bench.warnings = bench.split.warnings;

  const auto pool = build_pool(manifest, config, bench.split);
  bench.packets.reserve(static_cast<std::size_t>(config.packet_count));
  for (int i = 0; i < config.packet_count; ++i) {
    bench.packets.push_back(run_one(pool, config, i));
    if (!bench.packets.back().error.empty()) bench.warnings.push_back(bench.packets.back().error);
  }
  return bench;
}

PacketOutcome generate_packet(const std::vector<CorpusDocument>& manifest,
                              const GeneratorConfig& config, int index) {
  config.validate();
  const auto split = stratified_split(manifest, config.split_fractions, config.seed);
  return run_one(build_pool(manifest, config, split), config, index);
}

}  // namespace docsplit
