#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "patternbench/errors.hpp"
#include "patternbench/harness.hpp"
#include "patternbench/rbm.hpp"
#include "patternbench/report.hpp"

namespace pb = patternbench;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    if (end > start) out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
  std::vector<T> out;
  for (const auto& item : split_list(text)) out.push_back(parse(item));
  return out;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw pb::ConfigError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw pb::ConfigError("not an integer: '" + s + "'");
  return v;
}

void print_score(const pb::ScoreReport& report) {
  std::printf("score %.12f\n", report.final_score);
  std::printf("%-4s %-8s %-22s %6s %6s %10s %10s %10s %10s\n", "#", "type", "region", "area", "conv",
              "existence", "disorder", "deviation", "score");
  for (const auto& r : report.regions) {
    char region[64];
    std::snprintf(region, sizeof region, "[%d,%d)x[%d,%d)", r.region.rows.lo, r.region.rows.hi,
                  r.region.cols.lo, r.region.cols.hi);
    std::printf("%-4zu %-8s %-22s %6d %6d %10.6f %10.6f %10.6f %10.6f\n", r.pattern_index,
                std::string(pb::to_string(r.region.type)).c_str(), region, r.area, r.convolution, r.existence,
                r.disorder, r.deviation, r.score);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patterned matrix benchmark: generation, scoring, reordering and evaluation"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Build a benchmark dataset");
  std::string sizes = "100,200";
  std::string patterns = "block,offdiag,star,band";
  std::string kinds = "binary,continuous";
  int templates_per_cell = 10;
  int variations = pb::kDefaultVariationsPerTemplate;
  std::uint64_t seed = 0;
  double split_ratio = 0.8;
  int workers = 0;
  std::string out_dir;
  gen->add_option("--sizes", sizes, "Comma-separated matrix sizes")->capture_default_str();
  gen->add_option("--patterns", patterns, "Comma-separated pattern types")->capture_default_str();
  gen->add_option("--kinds", kinds, "binary, continuous or both")->capture_default_str();
  gen->add_option("--templates-per-cell", templates_per_cell)->capture_default_str();
  gen->add_option("--variations", variations, "Noise draws per template")->capture_default_str();
  gen->add_option("--seed", seed, "Master seed")->capture_default_str();
  gen->add_option("--split-ratio", split_ratio, "Train fraction")->capture_default_str();
  gen->add_option("--workers", workers, "Worker threads (0: all cores)")->capture_default_str();
  gen->add_option("--out", out_dir, "Output directory")->required();

  // template
  auto* tpl = app.add_subcommand("template", "Write one pristine template (.rbm + .json)");
  std::string tpl_pattern = "block";
  std::string tpl_kind = "binary";
  int tpl_size = 100;
  std::uint64_t tpl_seed = 0;
  std::string tpl_out;
  tpl->add_option("--pattern", tpl_pattern)->capture_default_str();
  tpl->add_option("--kind", tpl_kind)->capture_default_str();
  tpl->add_option("--size", tpl_size)->capture_default_str();
  tpl->add_option("--seed", tpl_seed)->capture_default_str();
  tpl->add_option("--out", tpl_out, "Output .rbm path")->required();

  // score
  auto* score = app.add_subcommand("score", "Score a matrix file");
  std::string score_path;
  std::string score_template;
  std::string metric_list = "conv";
  score->add_option("matrix", score_path, "Matrix .rbm file")->required();
  score->add_option("--template", score_template, "Template sidecar (.json)");
  bool score_json = false;
  score->add_flag("--json", score_json, "Print the report as JSON");
  score->add_option("--metric", metric_list, "me,la,moran,ar,ar_deviation,linear_seriation,bar,conv")
      ->capture_default_str();

  // reorder
  auto* reo = app.add_subcommand("reorder", "Reorder a matrix file");
  std::string reo_path;
  std::string reo_algo;
  std::uint64_t reo_seed = 0;
  std::string reo_out;
  reo->add_option("matrix", reo_path)->required();
  reo->add_option("--algo", reo_algo, "Algorithm name")->required();
  reo->add_option("--seed", reo_seed)->capture_default_str();
  reo->add_option("--out", reo_out, "Output .rbm path")->required();

  // evaluate
  auto* eva = app.add_subcommand("evaluate", "Evaluate reordering algorithms on a benchmark");
  std::string manifest_path;
  std::string algos = "hc_ward_olo,barycenter,rcm";
  std::string eval_split;
  std::string eval_sizes;
  std::string eval_patterns;
  std::string eval_kinds;
  std::uint64_t eval_seed = 0;
  int eval_workers = 0;
  std::string eval_out;
  eva->add_option("--manifest", manifest_path)->required();
  eva->add_option("--algos", algos)->capture_default_str();
  eva->add_option("--split", eval_split, "train or test (default: all)");
  eva->add_option("--sizes", eval_sizes);
  eva->add_option("--patterns", eval_patterns);
  eva->add_option("--kinds", eval_kinds);
  eva->add_option("--seed", eval_seed)->capture_default_str();
  eva->add_option("--workers", eval_workers)->capture_default_str();
  eva->add_option("--out", eval_out, "Report base path (REPORT -> REPORT.json)")->required();

  // report
  auto* rep = app.add_subcommand("report", "Render an evaluation report");
  std::string report_path;
  std::string formats = "csv,svg";
  std::string report_out;
  rep->add_option("report", report_path, "REPORT.json")->required();
  rep->add_option("--formats", formats)->capture_default_str();
  rep->add_option("--out", report_out, "Output base path (default: next to the report)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*gen) {
      pb::BenchmarkConfig cfg;
      try {
        cfg.sizes = parse_list<int>(sizes, parse_int);
        cfg.ptypes = parse_list<pb::PatternType>(patterns, [](const std::string& s) { return pb::parse_pattern_type(s); });
        cfg.kinds = parse_list<pb::MatrixKind>(kinds, [](const std::string& s) { return pb::parse_matrix_kind(s); });
        cfg.templates_per_cell = templates_per_cell;
        cfg.variations_per_template = variations;
        cfg.master_seed = seed;
        cfg.split_ratio = split_ratio;
        cfg.workers = workers;
        cfg.output_dir = out_dir;
        cfg.validate();
      } catch (const pb::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
      const auto manifest = pb::build_benchmark(cfg);
      std::cout << "wrote " << manifest.records.size() << " matrices to " << (fs::path(out_dir) / "manifest.jsonl").string()
                << "\n";
    } else if (*tpl) {
      pb::PatternType ptype;
      pb::MatrixKind kind;
      try {
        ptype = pb::parse_pattern_type(tpl_pattern);
        kind = pb::parse_matrix_kind(tpl_kind);
      } catch (const pb::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
      const std::string id = fs::path(tpl_out).stem().string();
      const auto t = pb::generate_template(ptype, tpl_size, kind, tpl_seed, id);
      pb::write_rbm(tpl_out, t.matrix);
      pb::write_sidecar(pb::sidecar_path(tpl_out), pb::template_sidecar(t));
      std::cout << "wrote " << tpl_out << " with " << t.patterns.size() << " patterns\n";
    } else if (*score) {
      bool want_score = false;
      std::vector<pb::MetricId> metrics;
      try {
        for (const auto& name : split_list(metric_list)) {
          if (name == "conv") {
            want_score = true;
          } else {
            metrics.push_back(pb::parse_metric_id(name));
          }
        }
      } catch (const pb::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
      std::optional<fs::path> side;
      if (!score_template.empty()) side = score_template;
      const auto result = pb::score_file(score_path, side, want_score, metrics);
      if (score_json) {
        pb::Json j = result.score ? pb::to_json(*result.score) : pb::Json::object();
        if (!result.metrics.empty()) {
          j["metrics"] = pb::Json::object();
          for (const auto& [id, value] : result.metrics) j["metrics"][std::string(pb::to_string(id))] = value;
        }
        std::cout << j.dump(2) << "\n";
      } else {
        if (result.score) print_score(*result.score);
        for (const auto& [id, value] : result.metrics) {
          std::printf("%s %.12g\n", std::string(pb::to_string(id)).c_str(), value);
        }
      }
    } else if (*reo) {
      pb::AlgorithmSpec spec;
      try {
        spec = pb::AlgorithmSpec::parse(reo_algo);
      } catch (const pb::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
      const auto m = pb::read_rbm(reo_path);
      const auto p = pb::reorder(m, spec, reo_seed);
      pb::write_rbm(reo_out, pb::permute(m, p));
      std::string order;
      for (std::size_t i = 0; i < p.size(); ++i) order += (i ? " " : "") + std::to_string(p[i]);
      std::cout << "order " << order << "\n";
    } else if (*eva) {
      pb::EvaluationOptions opt;
      try {
        for (const auto& name : split_list(algos)) opt.algorithms.push_back(pb::AlgorithmSpec::parse(name));
        opt.filter.split = eval_split;
        opt.filter.sizes = parse_list<int>(eval_sizes, parse_int);
        opt.filter.ptypes = parse_list<pb::PatternType>(eval_patterns, [](const std::string& s) { return pb::parse_pattern_type(s); });
        opt.filter.kinds = parse_list<pb::MatrixKind>(eval_kinds, [](const std::string& s) { return pb::parse_matrix_kind(s); });
        if (!eval_split.empty() && eval_split != "train" && eval_split != "test") {
          throw pb::ConfigError("--split must be train or test");
        }
      } catch (const pb::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
      opt.seed = eval_seed;
      opt.workers = eval_workers;
      const auto manifest = pb::read_manifest(manifest_path);
      const auto report = pb::evaluate_algorithms(manifest, opt);
      const auto written = pb::emit_report(report, {pb::ReportFormat::Json}, eval_out);
      for (const auto& row : report.rows) {
        std::printf("%-18s %-8s %-11s %5zu %8.4f %6zu\n", row.algorithm.c_str(),
                    std::string(pb::to_string(row.ptype)).c_str(), std::string(pb::to_string(row.kind)).c_str(),
                    row.size, row.mean_performance, row.count);
      }
      if (report.excluded) std::cout << "excluded (ground truth 0): " << report.excluded << "\n";
      std::cout << "wrote " << written.front().string() << "\n";
    } else if (*rep) {
      std::vector<pb::ReportFormat> fmts;
      try {
        fmts = parse_list<pb::ReportFormat>(formats, [](const std::string& s) { return pb::parse_report_format(s); });
      } catch (const pb::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
      const auto report = pb::read_report(report_path);
      fs::path base = report_out.empty() ? fs::path(report_path) : fs::path(report_out);
      if (report_out.empty()) base.replace_extension();
      for (const auto& p : pb::emit_report(report, fmts, base)) std::cout << "wrote " << p.string() << "\n";
    }
  } catch (const pb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
