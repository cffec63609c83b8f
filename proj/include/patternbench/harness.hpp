#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "patternbench/metrics.hpp"
#include "patternbench/reorder.hpp"
#include "patternbench/scoring.hpp"
#include "patternbench/sidecar.hpp"
#include "patternbench/template_gen.hpp"
#include "patternbench/variation_gen.hpp"

namespace patternbench {

/// Smallest matrix size accepted by build_benchmark.
inline constexpr int kMinBenchmarkSize = 16;

struct BenchmarkConfig {
  std::vector<int> sizes{100, 200};
  std::vector<PatternType> ptypes{kAllPatternTypes, kAllPatternTypes + 4};
  std::vector<MatrixKind> kinds{MatrixKind::Binary, MatrixKind::Continuous};
  int templates_per_cell = 10;
  int variations_per_template = kDefaultVariationsPerTemplate;
  std::uint64_t master_seed = 0;
  double split_ratio = 0.8;
  std::filesystem::path output_dir;
  /// 0 means std::thread::hardware_concurrency().
  int workers = 0;
  TemplateOptions template_options;
  SwapLadderOptions ladder;

  /// Throws ConfigError.
  void validate() const;
};

struct ManifestRecord {
  std::string path;           // matrix file, relative to the manifest directory
  std::string template_path;  // template sidecar, relative to the manifest directory
  std::string template_id;
  std::string split;
  PatternType ptype = PatternType::Block;
  MatrixKind kind = MatrixKind::Binary;
  std::size_t n = 0;
  VariationProvenance variation;
};

struct DatasetManifest {
  std::filesystem::path root;  // directory holding manifest.jsonl
  std::vector<ManifestRecord> records;
};

/// "{kind}-{ptype}-n{size}-{index:04}"
std::string template_id_for(MatrixKind kind, PatternType ptype, int size, int index);
/// "train" or "test", from a hash of (master seed, template id).
std::string split_for(std::uint64_t master_seed, const std::string& template_id, double split_ratio);

/// Runs fn(i) for i in [0, count) on `workers` threads (0: hardware
/// concurrency). The first exception thrown is rethrown after all threads
/// join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

/// Writes templates/<id>.json, matrices/<id>/<id>-d<draw>-s<swaps>.{rbm,json}
/// and manifest.jsonl (records sorted by path) under cfg.output_dir.
DatasetManifest build_benchmark(const BenchmarkConfig& cfg);

Json to_json(const ManifestRecord& r);
ManifestRecord manifest_record_from_json(const Json& j);
std::string manifest_text(const DatasetManifest& m);
void write_manifest(const DatasetManifest& m);
DatasetManifest read_manifest(const std::filesystem::path& manifest_path);

/// One matrix to evaluate: either held in memory or loaded from `path`.
struct EvaluationItem {
  std::string key;
  std::string template_id;
  PatternType ptype = PatternType::Block;
  MatrixKind kind = MatrixKind::Binary;
  std::size_t n = 0;
  std::size_t swap_count = 0;
  int noise_level = 0;
  int cluster_noise_level = 0;
  double ground_truth = 0.0;
  std::optional<Matrix> matrix;
  std::filesystem::path path;
  std::shared_ptr<const std::vector<PatternDescriptor>> patterns;
};

struct EvaluationFilter {
  std::vector<int> sizes;            // empty: all
  std::vector<PatternType> ptypes;   // empty: all
  std::vector<MatrixKind> kinds;     // empty: all
  std::string split;                 // empty: all
  bool accepts(const ManifestRecord& r) const;
};

struct EvaluationOptions {
  std::vector<AlgorithmSpec> algorithms;
  EvaluationFilter filter;
  std::uint64_t seed = 0;
  int workers = 0;
  ScoringOptions scoring;
};

struct EvaluationRow {
  std::string algorithm;
  PatternType ptype = PatternType::Block;
  MatrixKind kind = MatrixKind::Binary;
  std::size_t size = 0;
  double mean_performance = 0.0;
  std::size_t count = 0;
  friend bool operator==(const EvaluationRow&, const EvaluationRow&) = default;
};

struct EvaluationDetail {
  std::string key;
  std::string template_id;
  std::string algorithm;
  PatternType ptype = PatternType::Block;
  MatrixKind kind = MatrixKind::Binary;
  std::size_t size = 0;
  std::size_t swap_count = 0;
  int noise_level = 0;
  int cluster_noise_level = 0;
  double score = 0.0;
  double ground_truth = 0.0;
  double ratio = 0.0;
};

struct EvaluationReport {
  std::vector<EvaluationRow> rows;
  std::vector<EvaluationDetail> details;
  /// Matrices skipped because their ground-truth score is 0.
  std::size_t excluded = 0;
};

/// Reorders every item with every algorithm, scores the result against the
/// item's patterns and divides by the ground-truth score. Rows are grouped
/// by algorithm (in the given order), then ptype, kind and size.
EvaluationReport evaluate_items(const std::vector<EvaluationItem>& items,
                                const EvaluationOptions& options);

/// Selects manifest records with swap_count > 0 that pass the filter, then
/// evaluate_items. Throws ConfigError when nothing is selected.
EvaluationReport evaluate_algorithms(const DatasetManifest& manifest, const EvaluationOptions& options);

struct ScoreFileResult {
  std::optional<ScoreReport> score;
  std::vector<std::pair<MetricId, double>> metrics;
};

/// Scores a matrix file. The convolution-entropy score needs template
/// patterns: from `template_sidecar` when given, else from the matrix's own
/// sidecar when it exists. Throws PreconditionError when the score is
/// requested and no patterns are available.
ScoreFileResult score_file(const std::filesystem::path& matrix_path,
                           const std::optional<std::filesystem::path>& template_sidecar,
                           bool want_score, const std::vector<MetricId>& metrics);

}  // namespace patternbench
