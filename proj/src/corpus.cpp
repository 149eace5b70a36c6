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

#include "docsplit/corpus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "csv.hpp"
#include "docsplit/rng.hpp"

namespace docsplit {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

template <class Int>
bool parse_int(std::string_view text, Int& out) {
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string page_file(const std::string& dir, int page, const char* ext) {
  return (fs::path(dir) / fmt::format("page_{:04d}.{}", page, ext)).generic_string();
}

}  // namespace

std::vector<CorpusDocument> parse_manifest(std::string_view csv_text, const fs::path& base_dir) {
  const auto records = csv::parse(csv_text);
  if (records.empty()) throw ValidationError("MANIFEST_EMPTY", "line 1", "manifest has no header");

  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < records[0].fields.size(); ++i)
    column[normalize_type_code(records[0].fields[i])] = i;
  if (column.contains("status") && !column.contains("validation_status"))
    column["validation_status"] = column["status"];
  for (const char* required : {"type", "name", "pages"})
    if (!column.contains(required))
      throw ValidationError("MANIFEST_MISSING_COLUMN", "line 1",
                            std::string("missing column '") + required + "'");

  auto resolve = [&](const std::string& dir) {
    const fs::path p(dir);
    return (p.is_absolute() || base_dir.empty() ? p : base_dir / p).lexically_normal().generic_string();
  };

  std::vector<CorpusDocument> docs;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto where = "line " + std::to_string(rec.line);
    auto get = [&](const char* name) -> std::string {
      auto it = column.find(name);
      if (it == column.end() || it->second >= rec.fields.size()) return {};
      return rec.fields[it->second];
    };

    CorpusDocument doc;
    doc.name = get("name");
    doc.doc_type = DocType(get("type"));
    if (doc.name.empty() || doc.doc_type.empty())
      throw ValidationError("MANIFEST_MISSING_FIELD", where, "type and name are required");
    if (!parse_int(get("pages"), doc.page_count) || doc.page_count < 1)
      throw ValidationError("MANIFEST_BAD_PAGES", where, "pages must be an integer >= 1");
    if (const auto size = get("size"); !size.empty() && !parse_int(size, doc.size_bytes))
      throw ValidationError("MANIFEST_BAD_SIZE", where, "size must be an integer");

    const auto status = lower(get("validation_status"));
    if (status.empty() || status == "valid" || status == "ok" || status == "true" || status == "1")
      doc.valid = true;
    else if (status == "invalid" || status == "corrupt" || status == "corrupted" ||
             status == "false" || status == "0")
      doc.valid = false;
    else
      throw ValidationError("MANIFEST_BAD_STATUS", where, "unknown validation status '" + status + "'");

    if (const auto dir = get("text_dir"); !dir.empty())
      for (int k = 1; k <= doc.page_count; ++k) doc.text_paths.push_back(page_file(resolve(dir), k, "txt"));
    if (const auto dir = get("image_dir"); !dir.empty())
      for (int k = 1; k <= doc.page_count; ++k) doc.image_paths.push_back(page_file(resolve(dir), k, "png"));
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<CorpusDocument> read_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("MANIFEST_UNREADABLE", path.string(), "cannot open manifest");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str(), path.parent_path());
}

fs::path write_synthetic_corpus(const fs::path& dir, const SyntheticCorpusOptions& options) {
  fs::create_directories(dir);
  Rng rng(options.seed);

  std::vector<std::string> rows{"type,name,size,pages,validation_status,text_dir"};
  for (const auto& type : Taxonomy::standard().codes()) {
    const int count = type == "language" ? options.language_docs : options.docs_per_type;
    for (int d = 1; d <= count; ++d) {
      const auto name = fmt::format("{}_{:03d}", type, d);
      const int pages = rng.between(options.min_pages, options.max_pages);
      const auto text_dir = fs::path("text") / name;
      fs::create_directories(dir / text_dir);

      std::int64_t size = 0;
      for (int k = 1; k <= pages; ++k) {
        const auto body = fmt::format(
            "# {title}\nSource document: {name}\nCategory: {type}\nPage {k} of {pages}\n\n"
            "{blurb} Reference {name}-{k}.\n",
            fmt::arg("title", Taxonomy::describe(type)), fmt::arg("name", name),
            fmt::arg("type", type), fmt::arg("k", k), fmt::arg("pages", pages),
            fmt::arg("blurb", k == 1 ? "Opening page." : (k == pages ? "Closing page." : "Continued.")));
        std::ofstream(dir / text_dir / fmt::format("page_{:04d}.txt", k), std::ios::binary) << body;
        size += static_cast<std::int64_t>(body.size());
      }
      rows.push_back(csv::join({type, name, std::to_string(size), std::to_string(pages), "valid",
                                text_dir.generic_string()}));
    }
  }

  const auto manifest = dir / "manifest.csv";
  std::ofstream out(manifest, std::ios::binary);
  for (const auto& row : rows) out << row << '\n';
  return manifest;
}

}  // namespace docsplit
