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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "docsplit/corpus.hpp"
#include "docsplit/edge_cases.hpp"
#include "docsplit/evaluate.hpp"
#include "docsplit/generator.hpp"
#include "docsplit/io.hpp"
#include "docsplit/metrics.hpp"
#include "docsplit/prompt.hpp"

namespace py = pybind11;
using namespace docsplit;

namespace {

py::list findings(const std::vector<Finding>& list) {
  py::list out;
  for (const auto& f : list)
    out.append(py::dict(py::arg("code") = f.code, py::arg("pointer") = f.pointer, py::arg("message") = f.message));
  return out;
}

py::dict row_dict(const ScoreRow& row) {
  const auto& p = row.proposed;
  const auto& c = row.classical;
  return py::dict(py::arg("packet_id") = row.packet_id, py::arg("pages") = row.pages,
                  py::arg("failed") = row.failed, py::arg("rand_index") = p.rand_index,
                  py::arg("homogeneity") = p.homogeneity, py::arg("completeness") = p.completeness,
                  py::arg("v_measure") = p.v_measure, py::arg("clustering") = p.clustering,
                  py::arg("ordering") = p.ordering, py::arg("packet") = p.packet,
                  py::arg("page_accuracy") = c.page_accuracy,
                  py::arg("page_split_accuracy") = c.page_split_accuracy,
                  py::arg("page_split_order_accuracy") = c.page_split_order_accuracy,
                  py::arg("flags") = row.flags);
}

GroundTruthPacket require_gt(const std::string& jsonl) {
  auto parsed = parse_ground_truth(jsonl);
  if (!parsed.value) {
    const auto& e = parsed.report.errors.front();
    throw ValidationError(e.code, e.pointer, e.message);
  }
  return std::move(*parsed.value);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Packet splitting metrics, benchmark generation, and prediction I/O.";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);

  m.def("taxonomy", [] { return Taxonomy::standard().codes(); });
  m.def("normalize_type_code", &normalize_type_code, py::arg("name"));

  m.def("rand_index", &rand_index, py::arg("truth"), py::arg("predicted"));
  m.def(
      "v_measure",
      [](const Partition& truth, const Partition& predicted) {
        const auto v = v_measure(truth, predicted);
        return py::dict(py::arg("homogeneity") = v.homogeneity, py::arg("completeness") = v.completeness,
                        py::arg("v_measure") = v.v_measure);
      },
      py::arg("truth"), py::arg("predicted"));
  m.def(
      "kendall_tau_b",
      [](const std::vector<double>& x, const std::vector<double>& y) { return kendall_tau_b(x, y); },
      py::arg("predicted_ranks"), py::arg("truth_ranks"));

  m.def(
      "score",
      [](const std::string& gt_jsonl, const std::string& prediction, double w, double alpha, double beta) {
        const MetricWeights weights{w, alpha, beta};
        weights.validate();
        const auto gt = require_gt(gt_jsonl);
        PredictionRecord rec;
        auto parsed = parse_prediction(prediction, gt.n());
        rec.split = parsed.value;
        rec.report = parsed.report;
        if (!rec.split) {
          rec.failed = true;
          rec.error = parsed.report.errors.front().message;
        }
        auto out = row_dict(evaluate_packet(gt, rec, weights));
        out["errors"] = findings(parsed.report.errors);
        out["warnings"] = findings(parsed.report.warnings);
        return out;
      },
      py::arg("gt_jsonl"), py::arg("prediction"), py::arg("w") = 0.5, py::arg("alpha") = 0.5,
      py::arg("beta") = 0.5);

  m.def(
      "validate",
      [](const std::string& prediction, std::size_t pages) {
        const auto parsed = parse_prediction(prediction, pages);
        py::dict out(py::arg("valid") = parsed.value.has_value() && parsed.report.is_valid(),
                     py::arg("errors") = findings(parsed.report.errors),
                     py::arg("warnings") = findings(parsed.report.warnings));
        out["prediction"] = parsed.value ? py::object(py::str(format_prediction(*parsed.value))) : py::none();
        return out;
      },
      py::arg("prediction"), py::arg("pages") = 0);

  m.def(
      "generate",
      [](const std::string& manifest, const std::string& strategy, const std::string& profile,
         std::uint64_t seed, int count, const std::string& split) {
        GeneratorConfig c;
        c.strategy = parse_strategy(strategy);
        c.profile = parse_profile(profile);
        c.seed = seed;
        c.packet_count = count;
        c.split = parse_split(split);
        c.validate();
        const auto bench = generate_benchmark(read_manifest(manifest), c);
        py::list out;
        for (const auto& o : bench.packets)
          out.append(py::dict(py::arg("packet_id") = o.packet_id,
                              py::arg("jsonl") = o.packet ? py::object(py::str(format_ground_truth(*o.packet)))
                                                          : py::none(),
                              py::arg("error") = o.error));
        return out;
      },
      py::arg("manifest"), py::arg("strategy"), py::arg("profile") = "small", py::arg("seed") = 0,
      py::arg("count") = 1, py::arg("split") = "test");

  m.def(
      "synthetic_corpus",
      [](const std::string& dir, std::uint64_t seed, int docs_per_type) {
        SyntheticCorpusOptions o;
        o.seed = seed;
        o.docs_per_type = docs_per_type;
        return write_synthetic_corpus(dir, o).string();
      },
      py::arg("dir"), py::arg("seed") = 7, py::arg("docs_per_type") = 60);

  m.def(
      "prompt",
      [](const std::string& gt_jsonl, const std::string& root) {
        const auto pack = build_prompt(require_gt(gt_jsonl), Taxonomy::standard(), text_from_files(root));
        return py::dict(py::arg("system") = pack.system_text, py::arg("prompt") = pack.task_text);
      },
      py::arg("gt_jsonl"), py::arg("root") = "");

  m.def("selftest", [] {
    const auto result = run_selftest();
    return py::make_tuple(result.passed(), format_selftest(result));
  });
}
