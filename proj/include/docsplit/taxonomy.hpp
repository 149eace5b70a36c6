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

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace docsplit {

// Lowercases, trims, and maps spaces to underscores: "News Article" and
// "news_article" compare equal after normalization.
std::string normalize_type_code(std::string_view raw);

// A document category code. Always stored normalized.
class DocType {
 public:
  DocType() = default;
  explicit DocType(std::string_view raw) : code_(normalize_type_code(raw)) {}

  const std::string& code() const { return code_; }
  bool empty() const { return code_.empty(); }

  friend bool operator==(const DocType&, const DocType&) = default;
  friend auto operator<=>(const DocType&, const DocType&) = default;

 private:
  std::string code_;
};

// Closed set of document categories.
class Taxonomy {
 public:
  Taxonomy() = default;
  // Throws std::invalid_argument on empty or duplicate codes.
  explicit Taxonomy(std::vector<std::string> codes);

  // form, scientific_publication, handwritten, resume, letter, language,
  // specification, questionnaire, memo, news_article, email, invoice, budget.
  static const Taxonomy& standard();

  bool contains(std::string_view raw) const;
  const std::vector<std::string>& codes() const { return codes_; }
  std::size_t size() const { return codes_.size(); }

  // Short human description used in prompt tables; empty for unknown codes.
  static std::string_view describe(std::string_view code);

 private:
  std::vector<std::string> codes_;
};

}  // namespace docsplit
