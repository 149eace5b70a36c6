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

#include <doctest.h>

#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "docsplit/adapter.hpp"
#include "docsplit/evaluate.hpp"
#include "docsplit/io.hpp"
#include "docsplit/prompt.hpp"
#include "support.hpp"

using namespace docsplit;
using namespace docsplit::testing;
namespace fs = std::filesystem;

namespace {

const std::string kAdapter = DOCSPLIT_FIXTURE_ADAPTER;

PageTextSource fake_text() {
  return [](const PageRecord& p) -> std::optional<std::string> {
    return p.original_doc_name + " page " + std::to_string(p.local_page_ordinal) + "\n";
  };
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

AdapterRequest request_for(const GroundTruthPacket& gt) {
  return make_request(gt, build_prompt(gt, Taxonomy::standard(), fake_text()));
}

ModelRunConfig shell(const std::string& args, double timeout = 30) {
  ModelRunConfig c;
  c.adapter = "'" + kAdapter + "' " + args;
  c.timeout_seconds = timeout;
  return c;
}

GroundTruthPacket named(GroundTruthPacket gt, const std::string& id) {
  gt.packet_id = id;
  for (auto& p : gt.pages) p.parent_doc_name = id;
  return gt;
}

}  // namespace

TEST_CASE("prompt layout") {
  const auto gt = invoice_form();
  const auto pack = build_prompt(gt, Taxonomy::standard(), fake_text());
  CHECK(count(pack.document_text, "<page-number>") == 5);
  CHECK(pack.document_text.find("<page-number>4</page-number>\nform_doc1 page 1") != std::string::npos);
  // header, separator, 13 rows
  CHECK(count(pack.doc_types_table, "\n") == 15);
  for (const auto& code : Taxonomy::standard().codes())
    CHECK(pack.doc_types_table.find("| " + code + " |") != std::string::npos);
  CHECK(pack.task_text.find(pack.doc_types_table) != std::string::npos);
  CHECK(pack.task_text.find(pack.document_text) != std::string::npos);
  CHECK(pack.system_text == system_prompt());
  CHECK_FALSE(pack.system_text.empty());
}

TEST_CASE("prompt is deterministic and distinguishes packets") {
  Rng rng(21);
  std::set<std::string> seen;
  for (int i = 0; i < 200; ++i) {
    const auto gt = random_gt(rng, rng.between(1, 5), 4);
    const auto a = build_prompt(gt, Taxonomy::standard(), fake_text());
    REQUIRE(a == build_prompt(gt, Taxonomy::standard(), fake_text()));
    std::string layout;
    for (const auto& p : gt.pages) layout += p.original_doc_name + "#" + std::to_string(p.local_page_ordinal) + ";";
    // same page sequence <=> same prompt
    const auto key = layout + "\x1f" + a.task_text;
    seen.insert(key);
  }
  std::set<std::string> layouts, prompts;
  for (const auto& k : seen) {
    const auto cut = k.find('\x1f');
    layouts.insert(k.substr(0, cut));
    prompts.insert(k.substr(cut + 1));
  }
  CHECK(layouts.size() == prompts.size());
}

TEST_CASE("prompt with missing text names the page") {
  const auto gt = invoice_form();
  const PageTextSource partial = [](const PageRecord& p) -> std::optional<std::string> {
    if (p.packet_position == 4) return std::nullopt;
    return "x";
  };
  try {
    build_prompt(gt, Taxonomy::standard(), partial);
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "PROMPT_MISSING_TEXT");
    CHECK(e.pointer() == "page[4]");
  }
}

TEST_CASE("page text from files") {
  TempDir dir("text");
  std::ofstream(dir.path / "a.txt") << "hello";
  auto gt = make_gt({{0, "memo", 1}});
  gt.pages[0].text_path = "a.txt";
  const auto pack = build_prompt(gt, Taxonomy::standard(), text_from_files(dir.path));
  CHECK(pack.document_text.find("hello") != std::string::npos);
  gt.pages[0].text_path = "missing.txt";
  CHECK_THROWS_AS(build_prompt(gt, Taxonomy::standard(), text_from_files(dir.path)), ValidationError);
}

TEST_CASE("adapter requests carry no labels") {
  const auto req = request_for(invoice_form());
  const auto j = nlohmann::json::parse(format_request(req, ModelRunConfig{}));
  CHECK(j["page_count"] == 5);
  CHECK(j["pages"].size() == 5);
  for (const auto& p : j["pages"]) {
    CHECK_FALSE(p.contains("doc_type"));
    CHECK_FALSE(p.contains("group_id"));
    CHECK_FALSE(p.contains("local_doc_id"));
  }
  CHECK(j["generation"]["temperature"] == 0.0);
  CHECK(j["generation"]["top_p"] == 0.1);
  CHECK(j["generation"]["top_k"] == 5);
  CHECK(j["generation"]["max_tokens"] == 4096);
}

TEST_CASE("shell adapter outcomes") {
  TempDir dir("adapter");
  const auto gt = named(invoice_form(), "p");
  write_ground_truth(dir.path / "p.jsonl", gt);
  const auto req = request_for(gt);

  SUBCASE("oracle") {
    const auto r = run_adapter(req, shell("--mode oracle --gt '" + dir.path.string() + "'"));
    REQUIRE(r.ok);
    const auto rec = record_from_output(r, 5);
    REQUIRE(rec.split);
    const auto row = evaluate_packet(gt, rec);
    CHECK(row.proposed.packet == 1.0);
    CHECK(row.classical.page_split_order_accuracy == 1.0);
  }
  SUBCASE("echo of a saved completion") {
    std::ofstream(dir.path / "listing.txt") << "```json\n"
                                                R"({"subdocuments":[
  {"doc_type_id":"invoice","page_ordinals":[1,4],"local_doc_id":"invoice-01",},
  {"doc_type_id":"letter","page_ordinals":[3],"local_doc_id":"letter-01"},
  {"doc_type_id":"scientific publication","page_ordinals":[2,5,6,7,8,9,10,11,12,13,14],"local_doc_id":"scientific publication-01",},
  {"doc_type_id":"letter","page_ordinals":[15],"local_doc_id":"letter-02"},
]})" "\n```\n";
    const auto r = run_adapter(req, shell("--mode echo --file '" + (dir.path / "listing.txt").string() + "'"));
    REQUIRE(r.ok);
    const auto rec = record_from_output(r, 15);
    REQUIRE(rec.split);
    CHECK(rec.split->subdocuments.size() == 4);
  }
  SUBCASE("failure") {
    const auto r = run_adapter(req, shell("--mode fail"));
    CHECK_FALSE(r.ok);
    CHECK(r.exit_code == 3);
    const auto rec = record_from_output(r, 5);
    CHECK(rec.failed);
    const auto row = evaluate_packet(gt, rec);
    CHECK(row.failed);
    CHECK(row.proposed.ordering == 0.0);
    CHECK(row.flags.rfind("FAILED", 0) == 0);
  }
  SUBCASE("timeout") {
    const auto r = run_adapter(req, shell("--mode sleep --seconds 5 --gt '" + dir.path.string() + "'", 0.5));
    CHECK_FALSE(r.ok);
    CHECK(r.timed_out);
    CHECK(r.seconds < 3.0);
  }
  SUBCASE("missing command") {
    ModelRunConfig c;
    c.adapter = "/nonexistent/adapter";
    CHECK_FALSE(run_adapter(req, c).ok);
  }
}

TEST_CASE("http adapter") {
  TempDir dir("http");
  const auto gt = named(invoice_form(), "p");
  httplib::Server server;
  std::string received;
  server.Post("/split", [&](const httplib::Request& req, httplib::Response& res) {
    received = req.body;
    res.set_content(format_prediction(PredictedSplit{"p", {sub("invoice", {1, 2, 3}), sub("form", {4, 5})}}),
                    "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ModelRunConfig c;
  c.adapter = "http://127.0.0.1:" + std::to_string(port) + "/split";
  c.timeout_seconds = 10;
  const auto r = run_adapter(request_for(gt), c);
  server.stop();
  worker.join();

  REQUIRE(r.ok);
  CHECK(nlohmann::json::parse(received)["packet_id"] == "p");
  const auto row = evaluate_packet(gt, record_from_output(r, 5));
  CHECK(row.proposed.packet == 1.0);

  c.adapter = "http://127.0.0.1:" + std::to_string(port) + "/split";  // server gone
  CHECK_FALSE(run_adapter(request_for(gt), c).ok);
}

TEST_CASE("batch run with one failing packet") {
  TempDir dir("batch");
  std::map<std::string, GroundTruthPacket> gt_set;
  std::vector<AdapterRequest> requests;
  for (const auto* id : {"a", "b", "c"}) {
    const auto gt = named(invoice_form(), id);
    gt_set[id] = gt;
    if (std::string(id) != "b") write_ground_truth(dir.path / (std::string(id) + ".jsonl"), gt);
    requests.push_back(request_for(gt));
  }
  auto config = shell("--mode oracle --gt '" + dir.path.string() + "'");
  config.jobs = 3;
  const auto results = run_batch(requests, config);
  REQUIRE(results.size() == 3);
  CHECK(results[0].packet_id == "a");
  CHECK(results[1].packet_id == "b");
  CHECK_FALSE(results[1].ok);  // no ground truth file for the oracle to read

  std::map<std::string, PredictionRecord> preds;
  for (const auto& r : results) preds[r.packet_id] = record_from_output(r, 5);
  preds["zzz"] = PredictionRecord{};
  const auto report = evaluate_run(gt_set, preds);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].proposed.packet == 1.0);
  CHECK(report.rows[1].failed);
  CHECK(report.unmatched == std::vector<std::string>{"zzz"});
  CHECK(report.warnings.size() == 1);
  const auto agg = report.aggregate();
  REQUIRE(agg);
  CHECK(agg->flags == "packets=3;failed=1");
}

TEST_CASE("missing predictions are scored as failures") {
  const auto report = evaluate_run({{"p", named(invoice_form(), "p")}}, {});
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].failed);
  CHECK(report.rows[0].flags.find("missing prediction") != std::string::npos);
  CHECK_THROWS_AS(evaluate_run({}, {}, MetricWeights{0.5, 0.9, 0.9}), std::invalid_argument);
}
