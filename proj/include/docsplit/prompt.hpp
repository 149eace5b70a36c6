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

// Prompt rendering for the text-only splitting baseline.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "docsplit/model.hpp"

namespace docsplit {

struct PromptPack {
  std::string system_text;
  std::string task_text;        // complete user turn, including the two sections below
  std::string document_text;    // <document-text> ... </document-text>
  std::string doc_types_table;  // markdown, one row per type

  friend bool operator==(const PromptPack&, const PromptPack&) = default;
};

// Returns a page's text, or nullopt when it has none.
using PageTextSource = std::function<std::optional<std::string>(const PageRecord&)>;

// Reads text_path, resolving relative paths against `root`.
PageTextSource text_from_files(std::filesystem::path root = {});

std::string system_prompt();

// Throws ValidationError (PROMPT_MISSING_TEXT, pointer "page[<position>]")
// when a page has no text.
PromptPack build_prompt(const GroundTruthPacket& packet, const Taxonomy& taxonomy,
                        const PageTextSource& text);

}  // namespace docsplit
