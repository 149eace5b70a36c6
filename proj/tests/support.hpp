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

// Fixture builders and brute-force reference implementations for tests.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <unistd.h>

#include "docsplit/corpus.hpp"
#include "docsplit/model.hpp"
#include "docsplit/rng.hpp"

namespace docsplit::testing {

// A packet from (type, ordinal) per position; pages with the same `doc`
// index belong to the same group.
struct Spec {
  int doc;
  std::string type;
  int ordinal;
};

inline GroundTruthPacket make_gt(const std::vector<Spec>& specs, std::string id = "p") {
  GroundTruthPacket gt;
  gt.packet_id = id;
  std::map<int, std::string> local;
  std::map<std::string, int> per_type;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    if (!local.contains(s.doc)) {
      const int k = ++per_type[s.type];
      local[s.doc] = s.type + (k < 10 ? "-0" : "-") + std::to_string(k);
    }
    PageRecord p;
    p.parent_doc_name = id;
    p.packet_position = static_cast<int>(i) + 1;
    p.doc_type = DocType(s.type);
    p.original_doc_name = s.type + "_doc" + std::to_string(s.doc);
    p.local_doc_id = local[s.doc];
    p.group_id = s.doc;
    p.local_page_ordinal = s.ordinal;
    gt.pages.push_back(std::move(p));
  }
  return gt;
}

// The reference layout: invoice on pages 1-3, form on pages 4-5.
inline GroundTruthPacket invoice_form() {
  return make_gt({{0, "invoice", 1}, {0, "invoice", 2}, {0, "invoice", 3}, {1, "form", 1}, {1, "form", 2}});
}

inline PredictedSubdocument sub(std::string type, std::vector<int> positions, std::string id = {}) {
  if (id.empty()) id = type + "-01";
  return PredictedSubdocument{std::move(type), std::move(positions), std::move(id), std::nullopt};
}

// Label per element 1..n -> partition blocks.
inline Partition from_labels(const std::vector<int>& labels) {
  std::map<int, std::vector<int>> blocks;
  for (std::size_t i = 0; i < labels.size(); ++i) blocks[labels[i]].push_back(static_cast<int>(i) + 1);
  Partition p;
  for (auto& [label, block] : blocks) p.push_back(std::move(block));
  return p;
}

inline std::vector<int> random_labels(Rng& rng, int n, int max_labels) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (auto& l : labels) l = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_labels)));
  return labels;
}

// Every set partition of {1..n} as restricted growth strings.
inline std::vector<std::vector<int>> all_set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int max_label) {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (int l = 0; l <= max_label + 1; ++l) {
      a[static_cast<std::size_t>(i)] = l;
      rec(i + 1, std::max(max_label, l));
    }
  };
  if (n == 0) out.push_back({});
  else rec(0, -1);
  return out;
}

// Pair-counting Rand index straight from the definition.
inline double brute_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  if (n < 2) return 1.0;
  long agree = 0, pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ++pairs;
      if ((a[i] == a[j]) == (b[i] == b[j])) ++agree;
    }
  return static_cast<double>(agree) / static_cast<double>(pairs);
}

// Concordance enumeration with explicit tie counts.
inline double brute_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double nc = 0, nd = 0, tx = 0, ty = 0, n0 = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ++n0;
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0) ++tx;
      if (dy == 0) ++ty;
      if (dx * dy > 0) ++nc;
      if (dx * dy < 0) ++nd;
    }
  const double denom = std::sqrt((n0 - tx) * (n0 - ty));
  return denom == 0 ? 0.0 : (nc - nd) / denom;
}

// Entropy-based V-measure computed from label vectors (natural log).
inline double brute_v_measure(const std::vector<int>& truth, const std::vector<int>& pred) {
  const double n = static_cast<double>(truth.size());
  std::map<int, double> ct, cp;
  std::map<std::pair<int, int>, double> joint;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ct[truth[i]] += 1;
    cp[pred[i]] += 1;
    joint[{truth[i], pred[i]}] += 1;
  }
  auto entropy = [n](const std::map<int, double>& c) {
    double h = 0;
    for (const auto& [k, v] : c) h -= v / n * std::log(v / n);
    return h;
  };
  const double hc = entropy(ct), hk = entropy(cp);
  double hck = 0, hkc = 0;
  for (const auto& [key, v] : joint) {
    hck -= v / n * std::log(v / cp[key.second]);
    hkc -= v / n * std::log(v / ct[key.first]);
  }
  const double h = hc == 0 ? 1.0 : 1.0 - hck / hc;
  const double c = hk == 0 ? 1.0 : 1.0 - hkc / hk;
  return h + c == 0 ? 0.0 : 2 * h * c / (h + c);
}

// A small manifest: `per_type` documents in each listed category, page
// counts drawn from [1, max_pages].
inline std::vector<CorpusDocument> synthetic_manifest(const std::vector<std::string>& types,
                                                      int per_type, int max_pages,
                                                      std::uint64_t seed = 1) {
  Rng rng(seed);
  std::vector<CorpusDocument> docs;
  for (const auto& t : types)
    for (int i = 0; i < per_type; ++i) {
      CorpusDocument d;
      d.name = t + "_" + std::to_string(i);
      d.doc_type = DocType(t);
      d.page_count = rng.between(1, max_pages);
      docs.push_back(std::move(d));
    }
  return docs;
}

// Random valid packet: `docs` documents of random types and sizes, pages
// shuffled.
inline GroundTruthPacket random_gt(Rng& rng, int docs, int max_pages,
                                   const std::vector<std::string>& types = {"invoice", "form", "letter",
                                                                             "memo", "email"}) {
  std::vector<Spec> specs;
  for (int d = 0; d < docs; ++d) {
    const auto& type = types[rng.below(types.size())];
    const int pages = rng.between(1, max_pages);
    for (int k = 1; k <= pages; ++k) specs.push_back({d, type, k});
  }
  rng.shuffle(specs);
  // group ids by first appearance, as the generator does
  std::map<int, int> renumber;
  for (auto& s : specs) s.doc = renumber.try_emplace(s.doc, static_cast<int>(renumber.size())).first->second;
  return make_gt(specs);
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    Rng rng(static_cast<std::uint64_t>(std::hash<std::string>{}(tag)) ^
            static_cast<std::uint64_t>(::getpid()));
    path = std::filesystem::temp_directory_path() /
           ("docsplit-" + tag + "-" + std::to_string(rng.next() % 1000000007ULL));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace docsplit::testing
