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

#include "docsplit/taxonomy.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <stdexcept>
#include <utility>

namespace docsplit {

std::string normalize_type_code(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;

  std::string out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    const auto c = static_cast<unsigned char>(raw[i]);
    if (std::isspace(c)) {
      // Collapse runs of whitespace into a single underscore.
      if (out.empty() || out.back() != '_') out.push_back('_');
    } else {
      out.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  return out;
}

Taxonomy::Taxonomy(std::vector<std::string> codes) {
  std::set<std::string> seen;
  codes_.reserve(codes.size());
  for (const auto& raw : codes) {
    auto code = normalize_type_code(raw);
    if (code.empty()) throw std::invalid_argument("taxonomy: empty document type code");
    if (!seen.insert(code).second)
      throw std::invalid_argument("taxonomy: duplicate document type code '" + code + "'");
    codes_.push_back(std::move(code));
  }
}

const Taxonomy& Taxonomy::standard() {
  static const Taxonomy kStandard({"form", "scientific_publication", "handwritten", "resume",
                                   "letter", "language", "specification", "questionnaire",
                                   "memo", "news_article", "email", "invoice", "budget"});
  return kStandard;
}

bool Taxonomy::contains(std::string_view raw) const {
  const auto code = normalize_type_code(raw);
  return std::find(codes_.begin(), codes_.end(), code) != codes_.end();
}

std::string_view Taxonomy::describe(std::string_view code) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 13> kDescriptions{{
      {"form", "Structured form with labeled fields, checkboxes, or fill-in blanks"},
      {"scientific_publication", "Research article, journal paper, or technical report"},
      {"handwritten", "Page dominated by handwritten notes or correspondence"},
      {"resume", "Curriculum vitae or resume describing a person's career"},
      {"letter", "Formal or business letter with salutation and signature"},
      {"language", "Document written primarily in a language other than English"},
      {"specification", "Technical or product specification sheet"},
      {"questionnaire", "Survey or questionnaire with questions to be answered"},
      {"memo", "Internal memorandum with To/From/Subject header"},
      {"news_article", "Newspaper or magazine article"},
      {"email", "Printed email message with sender, recipient, and subject"},
      {"invoice", "Bill or invoice listing items, amounts, and totals"},
      {"budget", "Budget, financial plan, or cost breakdown table"},
  }};
  for (const auto& [key, text] : kDescriptions)
    if (key == code) return text;
  return {};
}

}  // namespace docsplit
