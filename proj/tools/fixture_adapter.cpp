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

// Test adapter. Reads one request on stdin and answers from ground truth:
//
//   oracle  the true split
//   merge   the true subdocuments, all sharing one local_doc_id
//   fail    exits with status 3
//   echo    prints --file verbatim
//   sleep   sleeps --seconds, then answers like oracle

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "docsplit/io.hpp"
#include "docsplit/packet.hpp"

namespace fs = std::filesystem;
using namespace docsplit;

namespace {

PredictedSplit true_split(const GroundTruthPacket& gt) {
  const auto layout = derive_gt_partition(gt);
  PredictedSplit pred;
  pred.packet_id = gt.packet_id;
  for (std::size_t g = 0; g < layout.group_count(); ++g) {
    PredictedSubdocument sub;
    sub.doc_type_id = layout.doc_types[g].code();
    sub.member_positions = layout.ordinal_order[g];
    sub.local_doc_id = gt.pages.at(static_cast<std::size_t>(layout.ordinal_order[g].front() - 1)).local_doc_id;
    pred.subdocuments.push_back(std::move(sub));
  }
  return pred;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixture adapter for harness tests"};
  std::string mode = "oracle";
  fs::path gt_dir, file;
  double seconds = 0;
  app.add_option("--mode", mode)->check(CLI::IsMember({"oracle", "merge", "fail", "echo", "sleep"}));
  app.add_option("--gt", gt_dir);
  app.add_option("--file", file);
  app.add_option("--seconds", seconds);
  CLI11_PARSE(app, argc, argv);

  std::stringstream input;
  input << std::cin.rdbuf();

  if (mode == "fail") {
    std::cerr << "fixture adapter: failing on purpose\n";
    return 3;
  }
  if (mode == "echo") {
    std::ifstream in(file, std::ios::binary);
    std::cout << in.rdbuf();
    return 0;
  }
  if (mode == "sleep") std::this_thread::sleep_for(std::chrono::duration<double>(seconds));

  try {
    const auto request = nlohmann::json::parse(input.str());
    const auto id = request.at("packet_id").get<std::string>();
    auto pred = true_split(read_ground_truth(gt_dir / (id + ".jsonl")));
    if (mode == "merge")
      for (auto& sub : pred.subdocuments) sub.local_doc_id = "merged-01";
    std::cout << "```json\n" << format_prediction(pred) << "```\n";
  } catch (const std::exception& e) {
    std::cerr << "fixture adapter: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
