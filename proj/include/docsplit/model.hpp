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

// Packet data model shared by every metric, reader, and generator.
//
// Page identity is the 1-based packet position everywhere. A document's
// within-document page number is its "ordinal".

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "docsplit/taxonomy.hpp"

namespace docsplit {

// Groups of 1-based packet positions. Each block is sorted ascending; block
// order carries no meaning for the metrics.
using Partition = std::vector<std::vector<int>>;

// One page of a ground-truth packet.
struct PageRecord {
  std::string parent_doc_name;  // packet id
  int packet_position = 0;      // 1-based position in the packet
  DocType doc_type;
  std::string original_doc_name;
  std::string local_doc_id;
  int group_id = 0;
  int local_page_ordinal = 0;  // page number inside the source document
  std::optional<std::string> image_path;
  std::optional<std::string> text_path;

  friend bool operator==(const PageRecord&, const PageRecord&) = default;
};

struct GroundTruthPacket {
  std::string packet_id;
  std::vector<PageRecord> pages;  // ordered by packet_position

  std::size_t n() const { return pages.size(); }
  friend bool operator==(const GroundTruthPacket&, const GroundTruthPacket&) = default;
};

// Contiguous document span (start/end are inclusive packet positions).
struct BoundarySegment {
  int start = 0;
  int end = 0;
  DocType doc_type;
  friend bool operator==(const BoundarySegment&, const BoundarySegment&) = default;
};

// One entry of a model's "subdocuments" array.
//
// member_positions are packet positions listed in claimed reading order. When
// claimed_ordinals is present it runs parallel to member_positions and
// overrides the list-order ordinals.
struct PredictedSubdocument {
  std::string doc_type_id;
  std::vector<int> member_positions;
  std::string local_doc_id;
  std::optional<std::vector<int>> claimed_ordinals;

  friend bool operator==(const PredictedSubdocument&, const PredictedSubdocument&) = default;
};

struct PredictedSplit {
  std::string packet_id;
  std::vector<PredictedSubdocument> subdocuments;
  friend bool operator==(const PredictedSplit&, const PredictedSplit&) = default;
};

struct Finding {
  std::string code;     // e.g. GT_DUP_POSITION, PRED_UNKNOWN_TYPE
  std::string pointer;  // JSON pointer or "record[3].page"
  std::string message;
  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> errors;
  std::vector<Finding> warnings;

  bool is_valid() const { return errors.empty(); }
  void error(std::string code, std::string pointer, std::string message) {
    errors.push_back({std::move(code), std::move(pointer), std::move(message)});
  }
  void warn(std::string code, std::string pointer, std::string message) {
    warnings.push_back({std::move(code), std::move(pointer), std::move(message)});
  }
  bool has_error(std::string_view code) const;
  bool has_warning(std::string_view code) const;
  void merge(const ValidationReport& other);
};

// A parsed value together with everything noticed while reading it. `value`
// is empty only when the input could not be interpreted at all.
template <class T>
struct Parsed {
  std::optional<T> value;
  ValidationReport report;
};

// Raised when an operation needs well-formed input and did not get it.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string code, std::string pointer, const std::string& message)
      : std::runtime_error(code + " at " + pointer + ": " + message),
        code_(std::move(code)),
        pointer_(std::move(pointer)) {}

  const std::string& code() const { return code_; }
  const std::string& pointer() const { return pointer_; }

 private:
  std::string code_;
  std::string pointer_;
};

}  // namespace docsplit
