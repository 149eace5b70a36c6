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

#include "docsplit/prompt.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace docsplit {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kSystem =
    "You are a document classification expert who can analyze and classify multiple documents "
    "and their page boundaries within a document package from various domains. Your task is to "
    "determine the document type based on its content and structure, using the provided document "
    "type definitions. Your output must be valid JSON according to the requested format.";

constexpr std::string_view kInstructions = R"(# Document Processing Instructions

## Document Text Structure

The <document-text> XML tags contains the text separated into pages from the document package. Each page will begin with a <page-number> XML tag indicating the one based page ordinal of the page text to follow.

## Document Types Reference

The <document-types> XML tags contain a markdown table of known doc types for detection.

## Terminology Guidance

Guidance for terminology found in the instructions:
- **ordinal_start_page**: The one based beginning page of a document segment within the document package.
- **ordinal_end_page**: The one based ending page of a document segment within the document package.
- **document_type**: The document type code detected for a document segment.
- **Distinct documents** of the same type may be adjacent to each other in the packet. Be sure to separate them into different document segments and don't combine them.
- **Blank Pages** in a document belong to the last document type and are included in the doc_type page count, for the purposes of ordinal_end_page calculation

## Document Splitting Guidance

When deciding whether pages belong to the same document segment:
- **Content continuity**: Pages with continuing paragraphs, numbered sections, or ongoing narratives likely belong to the same document.
- **Visual/formatting consistency**: Similar layouts, headers, footers, and styling suggest pages belong together.
- **Logical completion**: A document typically has a beginning, middle, and end structure.
- **Document boundaries**: Look for clear indicators of a new document such as new title pages, cover sheets, or significantly different subject matter.
- **Content similarity**: Pages discussing the same topic or subject likely belong to the same document.
- **Shuffled Pages**: Pages in the document packet **MAY** be shuffled out of order.
- **Document Types**: There may be multiple distinct documents of the same type in a document packet.

Pages should be grouped together when they represent a coherent, continuous document, even if they span multiple pages. Split documents only when there is clear evidence that a new, distinct document begins.

## CRITICAL INSTRUCTION

You must **ONLY** use document types explicitly listed in the <document-types> section. Do not create, invent, or use any document type not found in this list. If a document doesn't clearly match any listed type, assign it to the most similar listed type or "other" if that option is provided.

## Classification Process

Follow these steps when classifying documents within the document package:
- Analyze the pages in the document packet to identify each as a boundary `start page` a boundary `end page`, or a non-boundary `inner page`.
- Identify documents of the same type, that are not the same document but are adjacent to each other in the packet.
- Do not combine distinct documents of the same type into a single document segment.
- Determine what <document-types> each `start page`, `end page`, and `inner page` belongs to. Select ONLY from the <document-types>.
- Beginning with the `start page` iterate over each unclassified inner page in the document packet to find the best sequential match.
- Repeat this until all pages are sorted and classified.
- Before finalizing, verify that each document type in your response exactly matches one from the <document-types> list.

### Local Doc ID

Follow these steps to formulate the local_doc_id:
- The local_doc_id exists to identify individual instances of a single document type.
- The local_doc_id format is made up of {doc_type_id}-## where ## is the 01 based position of that doc type in the document packet.
- The classification result JSON structure provides an example made up of an invoice, a letter, and a scientific publication.
- Assign a unique local_doc_id to each subdocument classified in the document packet, according to the local_doc_id format.

## Classification Result Format

List every page exactly once. page_ordinals holds the page numbers of one document in that document's own reading order.

```json
{
  "subdocuments": [
    {"doc_type_id": "invoice", "page_ordinals": [1, 4], "local_doc_id": "invoice-01"},
    {"doc_type_id": "letter", "page_ordinals": [3], "local_doc_id": "letter-01"},
    {"doc_type_id": "scientific_publication", "page_ordinals": [2, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14], "local_doc_id": "scientific_publication-01"},
    {"doc_type_id": "letter", "page_ordinals": [15], "local_doc_id": "letter-02"}
  ]
}
```
)";

std::string markdown_cell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += "\\|";
    else if (c == '\n' || c == '\r') out += ' ';
    else out += c;
  }
  return out;
}

}  // namespace

PageTextSource text_from_files(fs::path root) {
  return [root = std::move(root)](const PageRecord& page) -> std::optional<std::string> {
    if (!page.text_path) return std::nullopt;
    fs::path p(*page.text_path);
    if (p.is_relative() && !root.empty()) p = root / p;
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
}

std::string system_prompt() { return std::string(kSystem); }

PromptPack build_prompt(const GroundTruthPacket& packet, const Taxonomy& taxonomy,
                        const PageTextSource& text) {
  PromptPack pack;
  pack.system_text = system_prompt();

  pack.doc_types_table = "| doc_type_id | description |\n| --- | --- |\n";
  for (const auto& code : taxonomy.codes())
    pack.doc_types_table += fmt::format("| {} | {} |\n", markdown_cell(code),
                                        markdown_cell(Taxonomy::describe(code)));

  pack.document_text = "<document-text>\n";
  for (const auto& page : packet.pages) {
    auto body = text(page);
    if (!body)
      throw ValidationError("PROMPT_MISSING_TEXT", fmt::format("page[{}]", page.packet_position),
                            "no text available for page " + std::to_string(page.packet_position));
    pack.document_text += fmt::format("<page-number>{}</page-number>\n{}", page.packet_position, *body);
    if (!body->empty() && body->back() != '\n') pack.document_text += '\n';
  }
  pack.document_text += "</document-text>\n";

  pack.task_text = std::string(kInstructions) + "\n<document-types>\n" + pack.doc_types_table +
                   "</document-types>\n\n" + pack.document_text;
  return pack;
}

}  // namespace docsplit
