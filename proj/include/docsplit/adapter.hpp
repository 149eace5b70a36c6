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

// Model adapter contract.
//
// The harness sends one JSON request per packet and reads back the model's
// raw completion. An adapter is either a shell command (request on stdin,
// completion on stdout, exit status 0) or an "http://host:port/path"
// endpoint that answers a POST of the request with the completion as body.
//
// Request:
//   {"packet_id": "...", "page_count": 5,
//    "pages": [{"page": 1, "text_path": "...", "image_path": null}, ...],
//    "system": "...", "prompt": "...",
//    "generation": {"temperature": 0.0, "top_p": 0.1, "top_k": 5, "max_tokens": 4096}}
//
// Ground-truth labels are never part of the request.

#include <optional>
#include <string>
#include <vector>

#include "docsplit/model.hpp"
#include "docsplit/prompt.hpp"

namespace docsplit {

struct ModelRunConfig {
  double temperature = 0.0;
  double top_p = 0.1;
  int top_k = 5;
  int max_tokens = 4096;
  std::string adapter;  // shell command or http:// URL
  double timeout_seconds = 120.0;
  int jobs = 1;  // concurrent adapter calls in run_batch
};

struct AdapterRequest {
  std::string packet_id;
  std::size_t page_count = 0;
  std::vector<PageRecord> pages;  // only position and paths are sent
  PromptPack prompt;
};

AdapterRequest make_request(const GroundTruthPacket& packet, PromptPack prompt);
std::string format_request(const AdapterRequest& request, const ModelRunConfig& config);

struct AdapterResult {
  std::string packet_id;
  bool ok = false;
  std::string output;  // raw completion
  std::string error;   // set when !ok
  int exit_code = 0;
  bool timed_out = false;
  double seconds = 0.0;
};

// Never throws for adapter misbehaviour: timeouts, non-zero exits, transport
// errors, and empty output all come back as !ok.
AdapterResult run_adapter(const AdapterRequest& request, const ModelRunConfig& config);

// Runs every request with at most config.jobs calls in flight. Results keep
// the order of `requests`.
std::vector<AdapterResult> run_batch(const std::vector<AdapterRequest>& requests,
                                     const ModelRunConfig& config);

}  // namespace docsplit
