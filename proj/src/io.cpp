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

#include "docsplit/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "csv.hpp"
#include "docsplit/packet.hpp"

namespace docsplit {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string slurp(const fs::path& path, const char* code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(code, path.string(), "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spill(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

// Fixed four decimals, without "-0.0000".
std::string fixed4(double x) {
  if (std::isnan(x)) return "nan";
  auto s = fmt::format("{:.4f}", x);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

double round4(double x) {
  const double r = std::round(x * 1e4) / 1e4;
  return r == 0.0 ? 0.0 : r;
}

// ---- ground truth ----------------------------------------------------------

std::string gt_ptr(std::size_t record, const char* field) {
  return fmt::format("record[{}].{}", record, field);
}

template <class T>
bool take(const json& obj, const char* field, std::size_t record, ValidationReport& report, T& out) {
  const auto it = obj.find(field);
  if (it == obj.end()) {
    report.error("GT_MISSING_FIELD", gt_ptr(record, field), "required field is missing");
    return false;
  }
  if constexpr (std::is_same_v<T, std::string>) {
    if (!it->is_string()) {
      report.error("GT_BAD_FIELD", gt_ptr(record, field), "expected a string");
      return false;
    }
  } else {
    if (!it->is_number_integer()) {
      report.error("GT_BAD_FIELD", gt_ptr(record, field), "expected an integer");
      return false;
    }
  }
  out = it->get<T>();
  return true;
}

bool take_path(const json& obj, const char* field, std::size_t record, ValidationReport& report,
               std::optional<std::string>& out) {
  const auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return true;
  if (!it->is_string()) {
    report.error("GT_BAD_FIELD", gt_ptr(record, field), "expected a string or null");
    return false;
  }
  out = it->get<std::string>();
  return true;
}

// ---- predictions -----------------------------------------------------------

// Isolates the outermost {...} of a completion that may be wrapped in prose
// or a fenced code block.
std::optional<std::string_view> envelope(std::string_view text) {
  const auto open = text.find('{');
  const auto close = text.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    return std::nullopt;
  return text.substr(open, close - open + 1);
}

// Drops commas that directly precede a closing bracket, outside strings.
std::string strip_trailing_commas(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      out.push_back(c);
      if (c == '\\' && i + 1 < text.size()) out.push_back(text[++i]);
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == ',') {
      auto j = text.find_first_not_of(" \t\r\n", i + 1);
      if (j != std::string_view::npos && (text[j] == '}' || text[j] == ']')) continue;
    }
    out.push_back(c);
  }
  return out;
}

bool read_int_array(const json& value, const std::string& pointer, ValidationReport& report,
                    std::vector<int>& out) {
  if (!value.is_array()) {
    report.error("PRED_BAD_FIELD", pointer, "expected an array of integers");
    return false;
  }
  for (std::size_t k = 0; k < value.size(); ++k) {
    const auto& item = value[k];
    if (item.is_number_integer() && item.get<std::int64_t>() >= INT32_MIN &&
        item.get<std::int64_t>() <= INT32_MAX) {
      out.push_back(static_cast<int>(item.get<std::int64_t>()));
    } else if (item.is_number_float() && std::floor(item.get<double>()) == item.get<double>() &&
               std::abs(item.get<double>()) < 1e9) {
      out.push_back(static_cast<int>(item.get<double>()));
    } else {
      report.error("PRED_BAD_FIELD", fmt::format("{}/{}", pointer, k), "expected an integer");
    }
  }
  return true;
}

// "<type>-NN": the prefix must name the subdocument's type and NN is a
// two-digit counter starting at 01. Returns the counter, or 0.
int local_id_counter(const std::string& local_id, const std::string& type_code) {
  const auto dash = local_id.rfind('-');
  if (dash == std::string::npos || local_id.size() - dash != 3) return 0;
  const char a = local_id[dash + 1];
  const char b = local_id[dash + 2];
  if (!std::isdigit(static_cast<unsigned char>(a)) || !std::isdigit(static_cast<unsigned char>(b)))
    return 0;
  if (normalize_type_code(local_id.substr(0, dash)) != type_code) return 0;
  return (a - '0') * 10 + (b - '0');
}

// ---- reports ---------------------------------------------------------------

constexpr std::array<std::string_view, 17> kColumns{
    "packet_id",      "pages",        "failed",     "rand_index",
    "homogeneity",    "completeness", "v_measure",  "clustering",
    "ordering",       "packet",       "page_accuracy", "page_split_accuracy",
    "page_split_order_accuracy", "w", "alpha",      "beta",
    "flags"};

std::vector<double> metric_values(const ScoreRow& row) {
  return {row.proposed.rand_index,  row.proposed.homogeneity, row.proposed.completeness,
          row.proposed.v_measure,   row.proposed.clustering,  row.proposed.ordering,
          row.proposed.packet,      row.classical.page_accuracy,
          row.classical.page_split_accuracy, row.classical.page_split_order_accuracy};
}

constexpr std::array<std::string_view, 10> kMetricNames{
    "rand_index", "homogeneity", "completeness", "v_measure", "clustering", "ordering", "packet",
    "page_accuracy", "page_split_accuracy", "page_split_order_accuracy"};

ordered_json row_json(const ScoreRow& row) {
  ordered_json j;
  j["packet_id"] = row.packet_id;
  j["pages"] = row.pages;
  j["failed"] = row.failed;
  const auto values = metric_values(row);
  for (std::size_t i = 0; i < values.size(); ++i) j[std::string(kMetricNames[i])] = round4(values[i]);
  j["n_multipage_groups"] = row.proposed.n_multipage_groups;
  j["flags"] = row.flags;
  return j;
}

}  // namespace

// ---- ground truth ----------------------------------------------------------

Parsed<GroundTruthPacket> parse_ground_truth(std::string_view jsonl) {
  Parsed<GroundTruthPacket> out;
  GroundTruthPacket gt;

  std::size_t line_no = 0;
  std::size_t record = 0;
  std::size_t start = 0;
  while (start <= jsonl.size()) {
    auto end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    const auto line = jsonl.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == jsonl.size()) break;
      continue;
    }

    const auto obj = json::parse(line, nullptr, false);
    const auto r = record++;
    if (obj.is_discarded() || !obj.is_object()) {
      out.report.error("GT_BAD_JSON", fmt::format("record[{}]", r),
                       fmt::format("line {} is not a JSON object", line_no));
      continue;
    }

    PageRecord page;
    std::string doc_type;
    bool ok = take(obj, "doc_type", r, out.report, doc_type);
    ok &= take(obj, "original_doc_name", r, out.report, page.original_doc_name);
    ok &= take(obj, "parent_doc_name", r, out.report, page.parent_doc_name);
    ok &= take(obj, "local_doc_id", r, out.report, page.local_doc_id);
    ok &= take(obj, "page", r, out.report, page.packet_position);
    ok &= take(obj, "group_id", r, out.report, page.group_id);
    ok &= take(obj, "local_doc_id_page_ordinal", r, out.report, page.local_page_ordinal);
    ok &= take_path(obj, "image_path", r, out.report, page.image_path);
    ok &= take_path(obj, "text_path", r, out.report, page.text_path);
    page.doc_type = DocType(doc_type);
    if (ok) gt.pages.push_back(std::move(page));
    if (end == jsonl.size()) break;
  }
  if (!out.report.is_valid()) return out;

  if (!gt.pages.empty()) gt.packet_id = gt.pages.front().parent_doc_name;
  out.report.merge(audit_ground_truth(gt));
  if (!out.report.is_valid()) return out;

  std::sort(gt.pages.begin(), gt.pages.end(),
            [](const PageRecord& a, const PageRecord& b) { return a.packet_position < b.packet_position; });
  out.value = std::move(gt);
  return out;
}

GroundTruthPacket read_ground_truth(const fs::path& path) {
  auto parsed = parse_ground_truth(slurp(path, "GT_UNREADABLE"));
  if (!parsed.value) {
    const auto& first = parsed.report.errors.front();
    throw ValidationError(first.code, path.filename().string() + ":" + first.pointer, first.message);
  }
  if (parsed.value->packet_id.empty()) parsed.value->packet_id = path.stem().string();
  return std::move(*parsed.value);
}

std::string format_ground_truth(const GroundTruthPacket& gt) {
  std::string out;
  for (const auto& page : gt.pages) {
    ordered_json j;
    j["doc_type"] = page.doc_type.code();
    j["original_doc_name"] = page.original_doc_name;
    j["parent_doc_name"] = page.parent_doc_name;
    j["local_doc_id"] = page.local_doc_id;
    j["page"] = page.packet_position;
    j["image_path"] = page.image_path ? ordered_json(*page.image_path) : ordered_json(nullptr);
    j["text_path"] = page.text_path ? ordered_json(*page.text_path) : ordered_json(nullptr);
    j["group_id"] = page.group_id;
    j["local_doc_id_page_ordinal"] = page.local_page_ordinal;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_ground_truth(const fs::path& path, const GroundTruthPacket& gt) {
  spill(path, format_ground_truth(gt));
}

std::map<std::string, GroundTruthPacket> read_ground_truth_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ValidationError("GT_UNREADABLE", dir.string(), "not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::map<std::string, GroundTruthPacket> out;
  for (const auto& file : files) {
    auto gt = read_ground_truth(file);
    const auto id = gt.packet_id;
    if (!out.emplace(id, std::move(gt)).second)
      throw ValidationError("GT_DUP_PACKET", file.string(), "packet id '" + id + "' seen twice");
  }
  return out;
}

// ---- predictions -----------------------------------------------------------

Parsed<PredictedSplit> parse_prediction(std::string_view text, std::size_t n,
                                        const Taxonomy& taxonomy) {
  Parsed<PredictedSplit> out;
  const auto body = envelope(text);
  if (!body) {
    out.report.error("PRED_ENVELOPE", "", "no JSON object found");
    return out;
  }
  const auto doc = json::parse(strip_trailing_commas(*body), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    out.report.error("PRED_ENVELOPE", "", "output is not a JSON object");
    return out;
  }
  const auto subs = doc.find("subdocuments");
  if (subs == doc.end() || !subs->is_array()) {
    out.report.error("PRED_ENVELOPE", "/subdocuments", "missing \"subdocuments\" array");
    return out;
  }

  PredictedSplit pred;
  if (const auto id = doc.find("packet_id"); id != doc.end() && id->is_string())
    pred.packet_id = id->get<std::string>();

  auto& report = out.report;
  std::map<std::string, std::vector<std::string>> ids_by_type;  // distinct ids per type, in order
  std::map<int, std::string> first_claim;                        // position -> pointer

  for (std::size_t i = 0; i < subs->size(); ++i) {
    const auto& item = (*subs)[i];
    const auto ptr = fmt::format("/subdocuments/{}", i);
    if (!item.is_object()) {
      report.error("PRED_BAD_FIELD", ptr, "subdocument is not an object");
      continue;
    }
    PredictedSubdocument sub;

    if (const auto t = item.find("doc_type_id"); t != item.end() && t->is_string()) {
      sub.doc_type_id = t->get<std::string>();
      if (!taxonomy.contains(sub.doc_type_id))
        report.error("PRED_UNKNOWN_TYPE", ptr + "/doc_type_id",
                     "'" + sub.doc_type_id + "' is not in the taxonomy");
    } else {
      report.error("PRED_BAD_FIELD", ptr + "/doc_type_id", "expected a string");
    }

    if (const auto p = item.find("page_ordinals"); p != item.end())
      read_int_array(*p, ptr + "/page_ordinals", report, sub.member_positions);
    else
      report.error("PRED_BAD_FIELD", ptr + "/page_ordinals", "missing");

    if (const auto c = item.find("claimed_ordinals"); c != item.end() && !c->is_null()) {
      std::vector<int> claimed;
      if (read_int_array(*c, ptr + "/claimed_ordinals", report, claimed)) {
        if (claimed.size() != sub.member_positions.size())
          report.error("PRED_ORDINALS_MISMATCH", ptr + "/claimed_ordinals",
                       fmt::format("{} ordinals for {} pages", claimed.size(),
                                   sub.member_positions.size()));
        std::set<int> distinct(claimed.begin(), claimed.end());
        if (distinct.size() != claimed.size())
          report.warn("PRED_DUP_CLAIMED_ORDINAL", ptr + "/claimed_ordinals",
                      "a page number is claimed twice");
        sub.claimed_ordinals = std::move(claimed);
      }
    }

    const auto type_code = normalize_type_code(sub.doc_type_id);
    if (const auto l = item.find("local_doc_id"); l != item.end() && l->is_string()) {
      sub.local_doc_id = l->get<std::string>();
      const int counter = local_id_counter(sub.local_doc_id, type_code);
      if (counter == 0) {
        report.error("PRED_BAD_LOCAL_ID", ptr + "/local_doc_id",
                     "'" + sub.local_doc_id + "' does not match '" + sub.doc_type_id + "-NN'");
      } else {
        auto& seen = ids_by_type[type_code];
        const auto norm = normalize_type_code(sub.local_doc_id);
        if (std::find(seen.begin(), seen.end(), norm) == seen.end()) {
          seen.push_back(norm);
          if (counter != static_cast<int>(seen.size()))
            report.warn("PRED_LOCAL_ID_SEQUENCE", ptr + "/local_doc_id",
                        fmt::format("expected counter {:02d} for this type", seen.size()));
        }
      }
    } else {
      report.error("PRED_BAD_LOCAL_ID", ptr + "/local_doc_id", "missing or not a string");
    }

    if (n > 0) {
      for (std::size_t k = 0; k < sub.member_positions.size(); ++k) {
        const int pos = sub.member_positions[k];
        const auto at = fmt::format("{}/page_ordinals/{}", ptr, k);
        if (pos < 1 || static_cast<std::size_t>(pos) > n) {
          report.error("PRED_OUT_OF_RANGE", at, fmt::format("page {} outside 1..{}", pos, n));
        } else if (auto [it, fresh] = first_claim.emplace(pos, at); !fresh) {
          report.error("PRED_DUP_POSITION", at,
                       fmt::format("page {} already listed at {}", pos, it->second));
        }
      }
    }
    pred.subdocuments.push_back(std::move(sub));
  }

  if (n > 0) {
    std::vector<std::string> missing;
    for (std::size_t pos = 1; pos <= n; ++pos)
      if (!first_claim.contains(static_cast<int>(pos))) missing.push_back(std::to_string(pos));
    if (!missing.empty())
      report.error("PRED_UNCOVERED", "/subdocuments",
                   fmt::format("pages not assigned: {}", fmt::join(missing, ", ")));
  }

  out.value = std::move(pred);
  return out;
}

std::string format_prediction(const PredictedSplit& pred) {
  ordered_json j;
  j["packet_id"] = pred.packet_id;
  j["subdocuments"] = ordered_json::array();
  for (const auto& sub : pred.subdocuments) {
    ordered_json s;
    s["doc_type_id"] = sub.doc_type_id;
    s["page_ordinals"] = sub.member_positions;
    s["local_doc_id"] = sub.local_doc_id;
    if (sub.claimed_ordinals) s["claimed_ordinals"] = *sub.claimed_ordinals;
    j["subdocuments"].push_back(std::move(s));
  }
  return j.dump(2) + "\n";
}

void write_prediction(const fs::path& path, const PredictedSplit& pred) {
  spill(path, format_prediction(pred));
}

// ---- baseline directory ----------------------------------------------------

std::map<std::string, Parsed<GroundTruthPacket>> read_baseline_dir(const fs::path& root) {
  const auto input = root / "input";
  const auto baseline = root / "baseline";
  std::map<std::string, Parsed<GroundTruthPacket>> out;

  if (!fs::is_directory(input) || !fs::is_directory(baseline)) {
    auto& entry = out[""];
    entry.report.error("BASE_LAYOUT", root.string(), "expected input/ and baseline/ directories");
    return out;
  }

  std::set<std::string> inputs;
  for (const auto& e : fs::directory_iterator(input))
    if (e.is_regular_file()) inputs.insert(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(baseline)) {
    const auto name = e.path().filename().string();
    if (e.is_directory() && !inputs.contains(name))
      out[name].report.error("BASE_MISSING_INPUT", "baseline/" + name, "no matching input file");
  }

  for (const auto& name : inputs) {
    auto& entry = out[name];
    auto& report = entry.report;
    const auto sections_dir = baseline / name / "sections";
    if (!fs::is_directory(baseline / name)) {
      report.error("BASE_MISSING_FOLDER", "baseline/" + name, "no baseline folder for input file");
      continue;
    }

    std::map<int, fs::path> sections;
    if (fs::is_directory(sections_dir)) {
      for (const auto& e : fs::directory_iterator(sections_dir)) {
        if (!e.is_directory()) continue;
        const auto dir_name = e.path().filename().string();
        int k = 0;
        const bool numeric = !dir_name.empty() &&
                             std::all_of(dir_name.begin(), dir_name.end(),
                                         [](unsigned char c) { return std::isdigit(c); }) &&
                             dir_name.size() < 7;
        if (numeric) k = std::stoi(dir_name);
        if (!numeric || k < 1 || std::to_string(k) != dir_name) {
          report.error("BASE_BAD_SECTION", "sections/" + dir_name, "section folders are named 1, 2, 3, ...");
          continue;
        }
        sections.emplace(k, e.path());
      }
    }
    if (sections.empty() && report.is_valid()) {
      report.error("BASE_NO_SECTIONS", "baseline/" + name + "/sections", "no numbered sections");
      continue;
    }
    if (!sections.empty() && sections.rbegin()->first != static_cast<int>(sections.size()))
      report.error("BASE_BAD_SECTION", "baseline/" + name + "/sections",
                   fmt::format("section numbers must run 1..{} without gaps", sections.size()));

    struct Section {
      int number;
      std::string type;
      std::vector<int> indices;
    };
    std::vector<Section> parsed;
    for (const auto& [k, dir] : sections) {
      const auto ptr = fmt::format("sections/{}/result.json", k);
      std::ifstream in(dir / "result.json", std::ios::binary);
      if (!in) {
        report.error("BASE_BAD_SECTION", ptr, "missing result.json");
        continue;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      const auto doc = json::parse(buf.str(), nullptr, false);
      if (doc.is_discarded() || !doc.is_object()) {
        report.error("BASE_BAD_JSON", ptr, "malformed JSON");
        continue;
      }
      const auto cls = doc.find("document_class");
      const auto split = doc.find("split_document");
      if (cls == doc.end() || !cls->is_object() || !cls->contains("type") ||
          !(*cls)["type"].is_string() || (*cls)["type"].get<std::string>().empty()) {
        report.error("BASE_BAD_SECTION", ptr + "#/document_class/type", "missing class");
        continue;
      }
      if (split == doc.end() || !split->is_object() || !split->contains("page_indices") ||
          !(*split)["page_indices"].is_array() || (*split)["page_indices"].empty()) {
        report.error("BASE_BAD_SECTION", ptr + "#/split_document/page_indices", "missing page indices");
        continue;
      }
      Section s{k, (*cls)["type"].get<std::string>(), {}};
      for (const auto& v : (*split)["page_indices"]) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() > 1000000) {
          report.error("BASE_BAD_INDEX", ptr + "#/split_document/page_indices",
                       "indices must be non-negative integers");
          s.indices.clear();
          break;
        }
        s.indices.push_back(static_cast<int>(v.get<std::int64_t>()));
      }
      if (!s.indices.empty()) parsed.push_back(std::move(s));
    }
    if (!report.is_valid()) continue;

    std::map<int, int> owner;  // zero-based index -> section
    for (const auto& s : parsed)
      for (int idx : s.indices)
        if (auto [it, fresh] = owner.emplace(idx, s.number); !fresh)
          report.error("BASE_DUP_INDEX", fmt::format("sections/{}/result.json", s.number),
                       fmt::format("page index {} also in section {}", idx, it->second));
    const int n = owner.empty() ? 0 : owner.rbegin()->first + 1;
    if (static_cast<int>(owner.size()) != n)
      for (int idx = 0; idx < n; ++idx)
        if (!owner.contains(idx))
          report.error("BASE_INDEX_RANGE", "baseline/" + name,
                       fmt::format("page index {} belongs to no section (pages 0..{})", idx, n - 1));
    if (!report.is_valid()) continue;

    GroundTruthPacket gt;
    gt.packet_id = name;
    std::map<std::string, int> per_type;
    for (const auto& s : parsed) {
      const DocType type(s.type);
      const auto local_id = fmt::format("{}-{:02d}", type.code(), ++per_type[type.code()]);
      for (std::size_t j = 0; j < s.indices.size(); ++j) {
        PageRecord page;
        page.parent_doc_name = name;
        page.packet_position = s.indices[j] + 1;
        page.doc_type = type;
        page.original_doc_name = fmt::format("section-{}", s.number);
        page.local_doc_id = local_id;
        page.group_id = s.number - 1;
        page.local_page_ordinal = static_cast<int>(j) + 1;
        gt.pages.push_back(std::move(page));
      }
    }
    std::sort(gt.pages.begin(), gt.pages.end(),
              [](const PageRecord& a, const PageRecord& b) { return a.packet_position < b.packet_position; });
    report.merge(audit_ground_truth(gt));
    if (report.is_valid()) entry.value = std::move(gt);
  }
  return out;
}

void write_baseline_dir(const fs::path& root, const std::vector<GroundTruthPacket>& packets) {
  fs::create_directories(root / "input");
  for (const auto& gt : packets) {
    spill(root / "input" / gt.packet_id, "");
    const auto layout = derive_gt_partition(gt);
    for (std::size_t g = 0; g < layout.group_count(); ++g) {
      std::vector<int> indices;
      for (int pos : layout.ordinal_order[g]) indices.push_back(pos - 1);
      ordered_json j;
      j["document_class"] = {{"type", layout.doc_types[g].code()}};
      j["split_document"] = {{"page_indices", indices}};
      j["inference_result"] = ordered_json::object();
      spill(root / "baseline" / gt.packet_id / "sections" / std::to_string(g + 1) / "result.json",
            j.dump(4) + "\n");
    }
  }
}

// ---- reports ---------------------------------------------------------------

std::optional<ScoreRow> ScoreReport::aggregate() const {
  if (rows.empty()) return std::nullopt;
  ScoreRow agg;
  agg.packet_id = "__aggregate__";
  std::vector<double> sums(kMetricNames.size(), 0.0);
  int failed = 0;
  for (const auto& row : rows) {
    const auto values = metric_values(row);
    for (std::size_t i = 0; i < values.size(); ++i) sums[i] += values[i];
    agg.pages += row.pages;
    agg.proposed.n_multipage_groups += row.proposed.n_multipage_groups;
    failed += row.failed ? 1 : 0;
  }
  const double count = static_cast<double>(rows.size());
  auto mean = [&](std::size_t i) { return sums[i] / count; };
  agg.proposed.rand_index = mean(0);
  agg.proposed.homogeneity = mean(1);
  agg.proposed.completeness = mean(2);
  agg.proposed.v_measure = mean(3);
  agg.proposed.clustering = mean(4);
  agg.proposed.ordering = mean(5);
  agg.proposed.packet = mean(6);
  agg.classical.page_accuracy = mean(7);
  agg.classical.page_split_accuracy = mean(8);
  agg.classical.page_split_order_accuracy = mean(9);
  agg.failed = failed > 0;
  agg.flags = fmt::format("packets={};failed={}", rows.size(), failed);
  return agg;
}

ReportFormat parse_report_format(std::string_view name) {
  const auto code = normalize_type_code(name);
  if (code == "json") return ReportFormat::kJson;
  if (code == "csv") return ReportFormat::kCsv;
  throw std::invalid_argument(fmt::format("unknown report format '{}'", name));
}

std::string format_report(const ScoreReport& report, ReportFormat format) {
  const auto aggregate = report.aggregate();
  if (format == ReportFormat::kJson) {
    ordered_json j;
    j["metadata"] = {{"aggregation", "unweighted mean over packets"},
                     {"weights",
                      {{"w", report.weights.w}, {"alpha", report.weights.alpha},
                       {"beta", report.weights.beta}}},
                     {"failure_rule", "failed or missing predictions are scored as fully unassigned"},
                     {"decimals", 4}};
    j["packets"] = ordered_json::array();
    for (const auto& row : report.rows) j["packets"].push_back(row_json(row));
    j["aggregate"] = aggregate ? row_json(*aggregate) : ordered_json(nullptr);
    j["unmatched"] = report.unmatched;
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
  }

  std::string out = csv::join(std::vector<std::string>(kColumns.begin(), kColumns.end())) + "\n";
  auto emit = [&](const ScoreRow& row, bool is_aggregate) {
    std::vector<std::string> fields{row.packet_id, std::to_string(row.pages),
                                    is_aggregate ? "" : (row.failed ? "true" : "false")};
    for (double v : metric_values(row)) fields.push_back(fixed4(v));
    fields.push_back(fixed4(report.weights.w));
    fields.push_back(fixed4(report.weights.alpha));
    fields.push_back(fixed4(report.weights.beta));
    fields.push_back(row.flags);
    out += csv::join(fields) + "\n";
  };
  for (const auto& row : report.rows) emit(row, false);
  if (aggregate) emit(*aggregate, true);
  return out;
}

void write_report(const fs::path& path, const ScoreReport& report, ReportFormat format) {
  spill(path, format_report(report, format));
}

}  // namespace docsplit
