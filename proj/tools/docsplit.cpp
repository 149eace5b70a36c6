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

// docsplit command-line tool.

#include <fmt/format.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "docsplit/adapter.hpp"
#include "docsplit/corpus.hpp"
#include "docsplit/edge_cases.hpp"
#include "docsplit/evaluate.hpp"
#include "docsplit/generator.hpp"
#include "docsplit/io.hpp"
#include "docsplit/prompt.hpp"

namespace fs = std::filesystem;
using namespace docsplit;

namespace {

// --seed wins; otherwise DOCSPLIT_SEED; otherwise 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("DOCSPLIT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t value = 0;
  const std::string_view text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument(fmt::format("DOCSPLIT_SEED='{}' is not an unsigned integer", text));
  return value;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::map<std::string, std::size_t> sizes_of(const std::map<std::string, GroundTruthPacket>& gt) {
  std::map<std::string, std::size_t> sizes;
  for (const auto& [id, packet] : gt) sizes[id] = packet.n();
  return sizes;
}

// A packet path is a .jsonl file or a directory holding exactly one.
fs::path packet_file(const fs::path& path) {
  if (!fs::is_directory(path)) return path;
  std::vector<fs::path> found;
  for (const auto& e : fs::directory_iterator(path))
    if (e.is_regular_file() && e.path().extension() == ".jsonl") found.push_back(e.path());
  if (found.size() != 1)
    throw std::invalid_argument(fmt::format("{} holds {} .jsonl files; pass one file", path.string(),
                                            found.size()));
  return found.front();
}

int cmd_gen(const GeneratorConfig& base, const std::optional<std::uint64_t>& seed_flag,
            const fs::path& corpus, const fs::path& out, std::optional<int> min_pages,
            std::optional<int> max_pages) {
  auto config = base;
  config.seed = resolve_seed(seed_flag);
  if (min_pages || max_pages) {
    auto r = default_range(config.profile);
    if (min_pages) r.min = *min_pages;
    if (max_pages) r.max = *max_pages;
    config.target_page_range = r;
  }
  const auto manifest = read_manifest(fs::absolute(corpus));
  const auto bench = generate_benchmark(manifest, config);

  fs::create_directories(out);
  nlohmann::ordered_json meta;
  meta["strategy"] = to_string(config.strategy);
  meta["profile"] = to_string(config.profile);
  meta["split"] = to_string(config.split);
  meta["seed"] = config.seed;
  meta["target_page_range"] = {config.range().min, config.range().max};
  meta["packet_count"] = config.packet_count;
  meta["excluded_types"] = config.effective_exclusions();
  meta["rng"] = kRngAlgorithm;
  meta["document_reuse"] = "unique within a packet; packets drawn independently from the split pool";
  meta["split_sizes"] = {{"train", bench.split.train.size()},
                         {"validation", bench.split.validation.size()},
                         {"test", bench.split.test.size()}};
  meta["packets"] = nlohmann::ordered_json::array();
  meta["failures"] = nlohmann::ordered_json::array();
  int failures = 0;
  for (const auto& outcome : bench.packets) {
    if (outcome.packet) {
      write_ground_truth(out / (outcome.packet_id + ".jsonl"), *outcome.packet);
      meta["packets"].push_back({{"packet_id", outcome.packet_id}, {"pages", outcome.packet->n()}});
    } else {
      ++failures;
      meta["failures"].push_back({{"packet_id", outcome.packet_id}, {"error", outcome.error}});
    }
  }
  meta["warnings"] = bench.warnings;
  write_text(out / "benchmark.json", meta.dump(2) + "\n");
  for (const auto& w : bench.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << fmt::format("wrote {} packet(s) to {}", bench.packets.size() - failures, out.string());
  if (failures) std::cout << fmt::format(" ({} failed)", failures);
  std::cout << "\n";
  return failures ? 1 : 0;
}

int cmd_score(const fs::path& gt_dir, const fs::path& pred_dir, const MetricWeights& weights,
              const std::string& format, const fs::path& out) {
  const auto fmt_kind = parse_report_format(format);
  const auto gt = read_ground_truth_dir(gt_dir);
  const auto preds = read_prediction_dir(pred_dir, sizes_of(gt));
  const auto report = evaluate_run(gt, preds, weights);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  write_text(out, format_report(report, fmt_kind));
  return 0;
}

int cmd_validate(const fs::path& file, std::size_t pages) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto parsed = parse_prediction(buffer.str(), pages);
  for (const auto& f : parsed.report.errors)
    std::cout << fmt::format("error   {:<24} {:<32} {}\n", f.code, f.pointer, f.message);
  for (const auto& f : parsed.report.warnings)
    std::cout << fmt::format("warning {:<24} {:<32} {}\n", f.code, f.pointer, f.message);
  if (parsed.value)
    std::cout << fmt::format("{} subdocument(s); {}\n", parsed.value->subdocuments.size(),
                             parsed.report.is_valid() ? "valid" : "invalid");
  return parsed.report.is_valid() ? 0 : 1;
}

int cmd_prompt(const fs::path& packet_path, const fs::path& out, const fs::path& root,
               const std::string& format) {
  const auto file = packet_file(packet_path);
  const auto gt = read_ground_truth(file);
  const auto pack = build_prompt(gt, Taxonomy::standard(),
                                 text_from_files(root.empty() ? file.parent_path() : root));
  if (format == "text") {
    write_text(out, "=== system ===\n" + pack.system_text + "\n\n=== user ===\n" + pack.task_text);
  } else if (format == "json") {
    write_text(out, format_request(make_request(gt, pack), ModelRunConfig{}) + "\n");
  } else {
    throw std::invalid_argument("--format must be json or text");
  }
  return 0;
}

int cmd_selftest(const fs::path& export_dir) {
  const auto result = run_selftest();
  std::cout << format_selftest(result);
  if (!export_dir.empty()) {
    export_edge_cases(export_dir);
    std::cout << "fixtures written to " << export_dir.string() << "\n";
  }
  return result.passed() ? 0 : 1;
}

int cmd_run(const fs::path& gt_dir, const ModelRunConfig& config, const fs::path& out,
            const fs::path& root, const MetricWeights& weights) {
  weights.validate();
  const auto gt = read_ground_truth_dir(gt_dir);
  const auto text = text_from_files(root.empty() ? gt_dir : root);

  std::vector<AdapterRequest> requests;
  std::map<std::string, PredictionRecord> preds;
  for (const auto& [id, packet] : gt) {
    try {
      requests.push_back(make_request(packet, build_prompt(packet, Taxonomy::standard(), text)));
    } catch (const ValidationError& e) {
      preds[id] = PredictionRecord{std::nullopt, {}, true, e.what()};
    }
  }
  const auto results = run_batch(requests, config);

  fs::create_directories(out / "pred");
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    if (r.ok) write_text(out / "pred" / (r.packet_id + ".json"), r.output);
    preds[r.packet_id] = record_from_output(r, gt.at(r.packet_id).n());
  }
  for (const auto& [id, rec] : preds)
    if (rec.failed) failures.push_back({{"packet_id", id}, {"error", rec.error}});

  const auto report = evaluate_run(gt, preds, weights);
  write_report(out / "report.json", report, ReportFormat::kJson);
  write_report(out / "report.csv", report, ReportFormat::kCsv);
  write_text(out / "failures.json", failures.dump(2) + "\n");

  if (const auto agg = report.aggregate())
    std::cout << fmt::format("{} packet(s), {} failed; packet {:.4f} clustering {:.4f} ordering {:.4f}\n",
                             report.rows.size(), failures.size(), agg->proposed.packet,
                             agg->proposed.clustering, agg->proposed.ordering);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesize document-packet benchmarks and score packet-splitting predictions."};
  app.require_subcommand(1);

  // gen
  GeneratorConfig gen_config;
  std::optional<std::uint64_t> gen_seed;
  std::string strategy = "poly_seq", profile = "small", split = "test";
  fs::path corpus, gen_out;
  std::optional<int> min_pages, max_pages;
  std::vector<std::string> excluded;
  auto* gen = app.add_subcommand("gen", "Generate ground-truth packets from a corpus manifest");
  gen->add_option("--strategy", strategy, "mono_seq|mono_rand|poly_seq|poly_int|poly_rand")->capture_default_str();
  gen->add_option("--profile", profile, "small|large")->capture_default_str();
  gen->add_option("--seed", gen_seed, "RNG seed (falls back to DOCSPLIT_SEED, then 0)");
  gen->add_option("--corpus", corpus, "Manifest CSV")->required();
  gen->add_option("--count", gen_config.packet_count, "Packets to generate")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--split", split, "train|validation|test")->capture_default_str();
  gen->add_option("--min-pages", min_pages, "Override the profile's target minimum");
  gen->add_option("--max-pages", max_pages, "Override the profile's target maximum");
  gen->add_option("--exclude", excluded, "Document types to leave out");

  // score
  fs::path gt_dir, pred_dir, score_out;
  MetricWeights weights;
  std::string format = "json";
  auto* score = app.add_subcommand("score", "Score a prediction directory against ground truth");
  score->add_option("--gt", gt_dir, "Ground-truth directory (*.jsonl)")->required();
  score->add_option("--pred", pred_dir, "Prediction directory (<packet_id>.json)")->required();
  score->add_option("--w", weights.w, "V-measure weight in the clustering score")->capture_default_str();
  score->add_option("--alpha", weights.alpha, "Clustering weight")->capture_default_str();
  score->add_option("--beta", weights.beta, "Ordering weight")->capture_default_str();
  score->add_option("--format", format, "json|csv")->capture_default_str();
  score->add_option("--out", score_out, "Report file (default stdout)");

  // validate
  fs::path pred_file;
  std::size_t pages = 0;
  auto* validate = app.add_subcommand("validate", "Check a prediction document");
  validate->add_option("--pred", pred_file, "Prediction JSON")->required();
  validate->add_option("--pages", pages, "Packet page count (enables coverage checks)")->required();

  // prompt
  fs::path packet_path, prompt_out, prompt_root;
  std::string prompt_format = "json";
  auto* prompt = app.add_subcommand("prompt", "Render the model prompt for one packet");
  prompt->add_option("--packet", packet_path, "Ground-truth .jsonl, or a directory with one")->required();
  prompt->add_option("--out", prompt_out, "Output file (default stdout)");
  prompt->add_option("--root", prompt_root, "Base for relative text paths");
  prompt->add_option("--format", prompt_format, "json (adapter request) or text")->capture_default_str();

  // selftest
  fs::path export_dir;
  auto* selftest = app.add_subcommand("selftest", "Score the reference edge cases");
  selftest->add_option("--export", export_dir, "Also write the fixtures here");

  // run
  ModelRunConfig run_config;
  fs::path run_gt, run_out, run_root;
  MetricWeights run_weights;
  auto* run = app.add_subcommand("run", "Send every packet to an adapter and score the answers");
  run->add_option("--gt", run_gt, "Ground-truth directory")->required();
  run->add_option("--adapter", run_config.adapter, "Shell command or http:// endpoint")->required();
  run->add_option("--out", run_out, "Output directory")->required();
  run->add_option("--timeout", run_config.timeout_seconds, "Seconds per packet")->capture_default_str();
  run->add_option("--jobs", run_config.jobs, "Concurrent adapter calls")->capture_default_str();
  run->add_option("--root", run_root, "Base for relative text paths");
  run->add_option("--temperature", run_config.temperature)->capture_default_str();
  run->add_option("--top-p", run_config.top_p)->capture_default_str();
  run->add_option("--top-k", run_config.top_k)->capture_default_str();
  run->add_option("--max-tokens", run_config.max_tokens)->capture_default_str();
  run->add_option("--w", run_weights.w)->capture_default_str();
  run->add_option("--alpha", run_weights.alpha)->capture_default_str();
  run->add_option("--beta", run_weights.beta)->capture_default_str();

  // synth-corpus
  fs::path synth_out;
  SyntheticCorpusOptions synth;
  std::optional<std::uint64_t> synth_seed;
  auto* synth_cmd = app.add_subcommand("synth-corpus", "Write a small synthetic text corpus");
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();
  synth_cmd->add_option("--seed", synth_seed, "RNG seed (falls back to DOCSPLIT_SEED, then 7)");
  synth_cmd->add_option("--docs-per-type", synth.docs_per_type)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      gen_config.strategy = parse_strategy(strategy);
      gen_config.profile = parse_profile(profile);
      gen_config.split = parse_split(split);
      gen_config.excluded_types.insert(excluded.begin(), excluded.end());
      return cmd_gen(gen_config, gen_seed, corpus, gen_out, min_pages, max_pages);
    }
    if (score->parsed()) return cmd_score(gt_dir, pred_dir, weights, format, score_out);
    if (validate->parsed()) return cmd_validate(pred_file, pages);
    if (prompt->parsed()) return cmd_prompt(packet_path, prompt_out, prompt_root, prompt_format);
    if (selftest->parsed()) return cmd_selftest(export_dir);
    if (run->parsed()) return cmd_run(run_gt, run_config, run_out, run_root, run_weights);
    if (synth_cmd->parsed()) {
      if (synth_seed || std::getenv("DOCSPLIT_SEED")) synth.seed = resolve_seed(synth_seed);
      std::cout << write_synthetic_corpus(synth_out, synth).string() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
