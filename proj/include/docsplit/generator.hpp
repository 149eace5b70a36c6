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

// Benchmark packet synthesis.
//
// Every strategy first picks whole source documents until the running page
// count reaches a target drawn uniformly from the configured range (the
// target is a threshold: the last document may overshoot it), then lays the
// pages out:
//
//   mono_seq   one category, documents concatenated
//   mono_rand  one category, all pages shuffled
//   poly_seq   categories cycled without replacement, documents concatenated
//   poly_int   as poly_seq, pages interleaved round-robin
//   poly_rand  as poly_seq, all pages shuffled
//
// A source document appears at most once per packet. Packets are drawn
// independently: packet i uses Rng::stream(seed, i) and the same pool.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "docsplit/corpus.hpp"
#include "docsplit/model.hpp"
#include "docsplit/rng.hpp"

namespace docsplit {

enum class Strategy { kMonoSeq, kMonoRand, kPolySeq, kPolyInt, kPolyRand };
enum class Profile { kSmall, kLarge };
enum class SplitName { kTrain, kValidation, kTest };

std::string_view to_string(Strategy s);
std::string_view to_string(Profile p);
std::string_view to_string(SplitName s);
// Throw std::invalid_argument on unknown names.
Strategy parse_strategy(std::string_view name);
Profile parse_profile(std::string_view name);
SplitName parse_split(std::string_view name);

bool is_mono(Strategy s);

struct PageRange {
  int min = 5;
  int max = 20;
};

// [5, 20] for small; [40, 130] for large.
PageRange default_range(Profile profile);

struct GeneratorConfig {
  Strategy strategy = Strategy::kPolySeq;
  Profile profile = Profile::kSmall;
  std::optional<PageRange> target_page_range;  // defaults from profile
  int packet_count = 1;
  std::uint64_t seed = 0;
  SplitName split = SplitName::kTest;
  std::set<std::string> excluded_types;  // mono strategies always add "language"
  std::vector<double> split_fractions{0.55, 0.20, 0.25};

  PageRange range() const { return target_page_range.value_or(default_range(profile)); }
  std::set<std::string> effective_exclusions() const;
  // Throws std::invalid_argument.
  void validate() const;
};

struct SplitAssignment {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;
  std::vector<std::string> warnings;

  const std::vector<std::string>& names(SplitName s) const;
};

// Per category (taxonomy-independent, ordered by code): shuffle the valid
// documents with Rng::stream(seed, category index), then cut them into
// train/validation/test by largest-remainder rounding of the fractions.
// Categories with fewer than three documents go entirely to train.
SplitAssignment stratified_split(const std::vector<CorpusDocument>& manifest,
                                 const std::vector<double>& fractions, std::uint64_t seed);

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Assemblers. `pool` holds the candidate documents; excluded categories must
// already be removed. The packet id becomes every page's parent_doc_name.
GroundTruthPacket assemble_mono_seq(const std::vector<CorpusDocument>& pool, PageRange range,
                                    Rng& rng, const std::string& packet_id);
GroundTruthPacket assemble_mono_rand(const std::vector<CorpusDocument>& pool, PageRange range,
                                     Rng& rng, const std::string& packet_id);
GroundTruthPacket assemble_poly_seq(const std::vector<CorpusDocument>& pool, PageRange range,
                                    Rng& rng, const std::string& packet_id);
GroundTruthPacket assemble_poly_int(const std::vector<CorpusDocument>& pool, PageRange range,
                                    Rng& rng, const std::string& packet_id);
GroundTruthPacket assemble_poly_rand(const std::vector<CorpusDocument>& pool, PageRange range,
                                     Rng& rng, const std::string& packet_id);

GroundTruthPacket assemble(Strategy strategy, const std::vector<CorpusDocument>& pool,
                           PageRange range, Rng& rng, const std::string& packet_id);

struct PacketOutcome {
  int index = 0;
  std::string packet_id;
  std::optional<GroundTruthPacket> packet;
  std::string error;  // set when packet is empty
};

struct Benchmark {
  GeneratorConfig config;
  SplitAssignment split;
  std::vector<PacketOutcome> packets;
  std::vector<std::string> warnings;
};

std::string packet_id_for(const GeneratorConfig& config, int index);

// Splits the manifest, builds the requested split's pool, and assembles
// packet_count packets. Assembly failures are recorded per packet.
Benchmark generate_benchmark(const std::vector<CorpusDocument>& manifest,
                             const GeneratorConfig& config);

// Assembles a single packet exactly as generate_benchmark would.
PacketOutcome generate_packet(const std::vector<CorpusDocument>& manifest,
                              const GeneratorConfig& config, int index);

}  // namespace docsplit
