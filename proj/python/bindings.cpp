#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "patternbench/errors.hpp"
#include "patternbench/harness.hpp"
#include "patternbench/metrics.hpp"
#include "patternbench/rbm.hpp"
#include "patternbench/reorder.hpp"
#include "patternbench/scoring.hpp"
#include "patternbench/sidecar.hpp"
#include "patternbench/template_gen.hpp"
#include "patternbench/variation_gen.hpp"

namespace py = pybind11;
namespace pb = patternbench;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;

pb::Matrix to_matrix(const FloatArray& a, const std::string& kind) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw pb::DimensionError("expected a square 2-D array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return pb::Matrix::from_symmetric(n, pb::parse_matrix_kind(kind), std::span<const float>(a.data(), n * n));
}

FloatArray to_array(const pb::Matrix& m) {
  const auto n = static_cast<py::ssize_t>(m.size());
  FloatArray out({n, n});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

std::string kind_name(const pb::Matrix& m) { return std::string(pb::to_string(m.kind())); }

py::dict score_dict(const pb::ScoreReport& r) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(pb::to_json(r).dump());
}

pb::Template template_from_json(const std::string& text, const FloatArray& a) {
  const auto side = pb::sidecar_from_json(pb::Json::parse(text));
  pb::Template t;
  t.matrix = to_matrix(a, std::string(pb::to_string(side.kind)));
  t.type = side.ptype;
  t.patterns = side.patterns;
  t.template_id = side.template_id;
  t.seed = side.template_seed;
  return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Patterned matrix generation, scoring and reordering";

  auto base = py::register_exception<pb::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<pb::DimensionError>(m, "DimensionError", base);
  py::register_exception<pb::KindError>(m, "KindError", base);
  py::register_exception<pb::InvariantError>(m, "InvariantError", base);
  py::register_exception<pb::PreconditionError>(m, "PreconditionError", base);
  py::register_exception<pb::GenerationError>(m, "GenerationError", base);
  py::register_exception<pb::ConfigError>(m, "ConfigError", base);
  py::register_exception<pb::IoError>(m, "IoError", base);
  py::register_exception<pb::ParseError>(m, "ParseError", base);

  py::class_<pb::Template>(m, "Template")
      .def_property_readonly("matrix", [](const pb::Template& t) { return to_array(t.matrix); })
      .def_property_readonly("kind", [](const pb::Template& t) { return kind_name(t.matrix); })
      .def_property_readonly("ptype", [](const pb::Template& t) { return std::string(pb::to_string(t.type)); })
      .def_readonly("template_id", &pb::Template::template_id)
      .def_readonly("seed", &pb::Template::seed)
      .def_property_readonly("n", &pb::Template::size)
      .def("sidecar_json", [](const pb::Template& t) { return pb::to_json(pb::template_sidecar(t)).dump(); })
      .def("__repr__", [](const pb::Template& t) {
        return "<Template " + t.template_id + " " + std::string(pb::to_string(t.type)) + " n=" +
               std::to_string(t.size()) + " patterns=" + std::to_string(t.patterns.size()) + ">";
      });

  m.def(
      "generate_template",
      [](const std::string& ptype, int n, const std::string& kind, std::uint64_t seed, const std::string& id) {
        return pb::generate_template(pb::parse_pattern_type(ptype), n, pb::parse_matrix_kind(kind), seed, id);
      },
      py::arg("ptype"), py::arg("n"), py::arg("kind") = "binary", py::arg("seed") = 0, py::arg("template_id") = "t");

  m.def(
      "template_from_json", &template_from_json, py::arg("sidecar_json"), py::arg("matrix"),
      "Rebuilds a template from its sidecar JSON text and matrix.");

  m.def(
      "score",
      [](const FloatArray& a, const pb::Template& t) { return score_dict(pb::score_matrix(to_matrix(a, kind_name(t.matrix)), t)); },
      py::arg("matrix"), py::arg("template"),
      "Score report as a dict with keys 'final' and 'regions'.");

  m.def(
      "variations",
      [](const pb::Template& t, std::uint64_t seed, int per_template) {
        pb::VariationOptions opt;
        opt.variations_per_template = per_template;
        py::list out;
        pb::for_each_variation(t, seed, opt, [&](pb::VariationRecord&& r) {
          py::dict d;
          d["matrix"] = to_array(r.matrix);
          d["draw_index"] = r.draw_index;
          d["noise_level"] = r.noise_level;
          d["cluster_noise_level"] = r.cluster_noise_level;
          d["swap_count"] = r.swap_count;
          d["seed"] = r.seed;
          d["score"] = r.score;
          d["ground_truth_score"] = r.ground_truth_score;
          out.append(d);
        });
        return out;
      },
      py::arg("template"), py::arg("seed"), py::arg("per_template") = pb::kDefaultVariationsPerTemplate);

  m.def("swap_ladder", [](std::size_t n) { return pb::swap_ladder(n); }, py::arg("n"));

  m.def("algorithms", &pb::registered_algorithms);

  m.def(
      "reorder",
      [](const FloatArray& a, const std::string& algo, std::uint64_t seed, const std::string& kind) {
        return pb::reorder(to_matrix(a, kind), pb::AlgorithmSpec::parse(algo), seed).order();
      },
      py::arg("matrix"), py::arg("algo"), py::arg("seed") = 0, py::arg("kind") = "continuous",
      "Returns the order: position i holds source row order[i].");

  m.def(
      "metric",
      [](const std::string& name, const FloatArray& a, const std::string& kind) {
        return pb::eval_metric_on(pb::parse_metric_id(name), to_matrix(a, kind));
      },
      py::arg("name"), py::arg("matrix"), py::arg("kind") = "continuous");

  m.def(
      "read_rbm",
      [](const std::filesystem::path& path) {
        const auto mat = pb::read_rbm(path);
        return py::make_tuple(to_array(mat), kind_name(mat));
      },
      py::arg("path"), "Returns (matrix, kind).");

  m.def(
      "write_rbm",
      [](const std::filesystem::path& path, const FloatArray& a, const std::string& kind) {
        pb::write_rbm(path, to_matrix(a, kind));
      },
      py::arg("path"), py::arg("matrix"), py::arg("kind"));
}
