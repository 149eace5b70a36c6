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

// Corpus manifest: one CSV row per source document.
//
//   type,name,size,pages,validation_status[,text_dir][,image_dir]
//
// validation_status is "valid" or "invalid" (also accepted: ok/true/1 and
// corrupt/false/0). When text_dir is given, page k of the document is read
// from <text_dir>/page_KKKK.txt; image_dir likewise yields page_KKKK.png.
// Relative directories are resolved against the manifest's own directory.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "docsplit/model.hpp"

namespace docsplit {

struct CorpusDocument {
  std::string name;
  DocType doc_type;
  std::int64_t size_bytes = 0;
  int page_count = 1;
  bool valid = true;
  std::vector<std::string> text_paths;   // empty, or one per page
  std::vector<std::string> image_paths;  // empty, or one per page

  friend bool operator==(const CorpusDocument&, const CorpusDocument&) = default;
};

// Throws ValidationError (MANIFEST_*) with the 1-based CSV line on bad rows.
std::vector<CorpusDocument> read_manifest(const std::filesystem::path& path);
std::vector<CorpusDocument> parse_manifest(std::string_view csv_text,
                                           const std::filesystem::path& base_dir = {});

struct SyntheticCorpusOptions {
  int docs_per_type = 60;
  int language_docs = 7;  // the scarce category
  int min_pages = 1;
  int max_pages = 4;
  std::uint64_t seed = 7;
};

// Writes <dir>/manifest.csv plus one small text file per page whose content
// names the document, its type, and the page number. Deterministic in the
// options. Returns the manifest path.
std::filesystem::path write_synthetic_corpus(const std::filesystem::path& dir,
                                             const SyntheticCorpusOptions& options = {});

}  // namespace docsplit
