#include "patternbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "patternbench/errors.hpp"
#include "patternbench/rbm.hpp"

namespace fs = std::filesystem;

namespace patternbench {

void BenchmarkConfig::validate() const {
  if (sizes.empty() || ptypes.empty() || kinds.empty()) {
    throw ConfigError("sizes, patterns and kinds must be nonempty");
  }
  for (int n : sizes) {
    if (n < kMinBenchmarkSize) {
      throw ConfigError("size " + std::to_string(n) + " is too small for up to " +
                        std::to_string(template_options.max_patterns) + " patterns (minimum " +
                        std::to_string(kMinBenchmarkSize) + ")");
    }
  }
  if (templates_per_cell < 1) throw ConfigError("templates_per_cell must be positive");
  if (variations_per_template < 1) throw ConfigError("variations_per_template must be positive");
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) throw ConfigError("split_ratio must lie in (0,1)");
  if (output_dir.empty()) throw ConfigError("output directory is required");
}

std::string template_id_for(MatrixKind kind, PatternType ptype, int size, int index) {
  char suffix[16];
  std::snprintf(suffix, sizeof suffix, "%04d", index);
  return std::string(to_string(kind)) + "-" + std::string(to_string(ptype)) + "-n" +
         std::to_string(size) + "-" + suffix;
}

std::string split_for(std::uint64_t master_seed, const std::string& template_id, double split_ratio) {
  const std::uint64_t h = derive_seed(master_seed, "split:" + template_id);
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return u < split_ratio ? "train" : "test";
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  std::size_t threads = workers > 0 ? static_cast<std::size_t>(workers)
                                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

namespace {

struct TemplateJob {
  MatrixKind kind;
  PatternType ptype;
  int size;
  int index;
};

std::string variation_stem(const std::string& id, int draw, std::size_t swaps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "-d%02d-s%zu", draw, swaps);
  return id + buf;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

DatasetManifest build_benchmark(const BenchmarkConfig& cfg) {
  cfg.validate();
  const fs::path root = cfg.output_dir;
  ensure_directory(root / "templates");
  ensure_directory(root / "matrices");

  std::vector<TemplateJob> jobs;
  for (int size : cfg.sizes) {
    for (PatternType ptype : cfg.ptypes) {
      for (MatrixKind kind : cfg.kinds) {
        for (int k = 0; k < cfg.templates_per_cell; ++k) jobs.push_back({kind, ptype, size, k});
      }
    }
  }

  std::vector<std::vector<ManifestRecord>> per_job(jobs.size());
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t j) {
    const auto& job = jobs[j];
    const std::string id = template_id_for(job.kind, job.ptype, job.size, job.index);
    const std::uint64_t seed = derive_seed(cfg.master_seed, id);
    const std::string split = split_for(cfg.master_seed, id, cfg.split_ratio);
    const Template t = generate_template(job.ptype, job.size, job.kind, seed, id, cfg.template_options);

    Sidecar tsc = template_sidecar(t);
    tsc.split = split;
    const std::string template_rel = "templates/" + id + ".json";
    write_sidecar(root / template_rel, tsc);

    const std::string dir_rel = "matrices/" + id;
    ensure_directory(root / dir_rel);
    VariationOptions vopt;
    vopt.variations_per_template = cfg.variations_per_template;
    vopt.ladder = cfg.ladder;
    auto& records = per_job[j];
    for_each_variation(t, derive_seed(seed, "variations"), vopt, [&](VariationRecord&& r) {
      const std::string stem = dir_rel + "/" + variation_stem(id, r.draw_index, r.swap_count);
      write_rbm(root / (stem + ".rbm"), r.matrix);
      Sidecar vsc = variation_sidecar(t, r);
      vsc.split = split;
      write_sidecar(root / (stem + ".json"), vsc);

      ManifestRecord rec;
      rec.path = stem + ".rbm";
      rec.template_path = template_rel;
      rec.template_id = id;
      rec.split = split;
      rec.ptype = job.ptype;
      rec.kind = job.kind;
      rec.n = static_cast<std::size_t>(job.size);
      rec.variation = *vsc.variation;
      records.push_back(std::move(rec));
    });
  });

  DatasetManifest manifest;
  manifest.root = root;
  for (auto& part : per_job) {
    for (auto& r : part) manifest.records.push_back(std::move(r));
  }
  std::sort(manifest.records.begin(), manifest.records.end(),
            [](const ManifestRecord& a, const ManifestRecord& b) { return a.path < b.path; });
  write_manifest(manifest);
  return manifest;
}

Json to_json(const ManifestRecord& r) {
  Json j;
  j["path"] = r.path;
  j["sidecar"] = sidecar_path(r.path).generic_string();
  j["template"] = r.template_path;
  j["template_id"] = r.template_id;
  j["split"] = r.split;
  j["ptype"] = std::string(to_string(r.ptype));
  j["kind"] = std::string(to_string(r.kind));
  j["n"] = r.n;
  j["draw_index"] = r.variation.draw_index;
  j["noise_level"] = r.variation.noise_level;
  j["cluster_noise_level"] = r.variation.cluster_noise_level;
  j["swap_count"] = r.variation.swap_count;
  j["seed"] = r.variation.seed;
  j["score"] = r.variation.score;
  j["ground_truth_score"] = r.variation.ground_truth_score;
  return j;
}

ManifestRecord manifest_record_from_json(const Json& j) {
  try {
    ManifestRecord r;
    r.path = j.at("path").get<std::string>();
    r.template_path = j.at("template").get<std::string>();
    r.template_id = j.at("template_id").get<std::string>();
    r.split = j.at("split").get<std::string>();
    r.ptype = parse_pattern_type(j.at("ptype").get<std::string>());
    r.kind = parse_matrix_kind(j.at("kind").get<std::string>());
    r.n = j.at("n").get<std::size_t>();
    r.variation.draw_index = j.at("draw_index").get<int>();
    r.variation.noise_level = j.at("noise_level").get<int>();
    r.variation.cluster_noise_level = j.at("cluster_noise_level").get<int>();
    r.variation.swap_count = j.at("swap_count").get<std::size_t>();
    r.variation.seed = j.at("seed").get<std::uint64_t>();
    r.variation.score = j.at("score").get<double>();
    r.variation.ground_truth_score = j.at("ground_truth_score").get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("manifest record: ") + e.what(), 0);
  } catch (const ConfigError& e) {
    throw ParseError(std::string("manifest record: ") + e.what(), 0);
  }
}

std::string manifest_text(const DatasetManifest& m) {
  std::string out;
  for (const auto& r : m.records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

void write_manifest(const DatasetManifest& m) {
  write_text_file(m.root / "manifest.jsonl", manifest_text(m));
}

DatasetManifest read_manifest(const fs::path& manifest_path) {
  const std::string text = read_text_file(manifest_path);
  DatasetManifest m;
  m.root = manifest_path.parent_path();
  std::size_t offset = 0;
  while (offset < text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(offset, end - offset);
    if (!line.empty()) {
      try {
        m.records.push_back(manifest_record_from_json(Json::parse(line)));
      } catch (const Json::parse_error& e) {
        throw ParseError("'" + manifest_path.string() + "': invalid JSON line", offset + e.byte - 1);
      } catch (const ParseError& e) {
        throw ParseError("'" + manifest_path.string() + "': " + e.detail(), offset);
      }
    }
    offset = end + 1;
  }
  return m;
}

bool EvaluationFilter::accepts(const ManifestRecord& r) const {
  auto allowed = [](const auto& set, const auto& value) {
    return set.empty() || std::find(set.begin(), set.end(), value) != set.end();
  };
  return allowed(sizes, static_cast<int>(r.n)) && allowed(ptypes, r.ptype) && allowed(kinds, r.kind) &&
         (split.empty() || split == r.split);
}

EvaluationReport evaluate_items(const std::vector<EvaluationItem>& items, const EvaluationOptions& options) {
  if (options.algorithms.empty()) throw ConfigError("no algorithms selected");
  const std::size_t algos = options.algorithms.size();
  std::vector<EvaluationDetail> slots(items.size() * algos);
  std::vector<char> excluded(items.size(), 0);

  parallel_for(items.size(), options.workers, [&](std::size_t i) {
    const auto& item = items[i];
    if (!(item.ground_truth > 0.0)) {
      excluded[i] = 1;
      return;
    }
    if (!item.patterns) throw PreconditionError("item '" + item.key + "' has no template patterns");
    const Matrix m = item.matrix ? *item.matrix : read_rbm(item.path);
    for (std::size_t a = 0; a < algos; ++a) {
      const auto& spec = options.algorithms[a];
      const std::string name = spec.name();
      const std::uint64_t seed = derive_seed(options.seed, item.key + "|" + name);
      const Permutation p = reorder(m, spec, seed);
      const double score = score_matrix(permute(m, p), item.kind, *item.patterns, options.scoring).final_score;
      auto& d = slots[i * algos + a];
      d.key = item.key;
      d.template_id = item.template_id;
      d.algorithm = name;
      d.ptype = item.ptype;
      d.kind = item.kind;
      d.size = item.n;
      d.swap_count = item.swap_count;
      d.noise_level = item.noise_level;
      d.cluster_noise_level = item.cluster_noise_level;
      d.score = score;
      d.ground_truth = item.ground_truth;
      d.ratio = score / item.ground_truth;
    }
  });

  EvaluationReport report;
  for (char e : excluded) report.excluded += e ? 1 : 0;

  using CellKey = std::tuple<int, int, std::size_t>;
  std::set<CellKey> cells;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!excluded[i]) {
      cells.insert({static_cast<int>(items[i].ptype), static_cast<int>(items[i].kind), items[i].n});
    }
  }
  for (std::size_t a = 0; a < algos; ++a) {
    std::map<CellKey, std::pair<double, std::size_t>> sums;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (excluded[i]) continue;
      const auto& d = slots[i * algos + a];
      auto& acc = sums[{static_cast<int>(d.ptype), static_cast<int>(d.kind), d.size}];
      acc.first += d.ratio;
      acc.second += 1;
    }
    for (const auto& cell : cells) {
      const auto& acc = sums[cell];
      EvaluationRow row;
      row.algorithm = options.algorithms[a].name();
      row.ptype = static_cast<PatternType>(std::get<0>(cell));
      row.kind = static_cast<MatrixKind>(std::get<1>(cell));
      row.size = std::get<2>(cell);
      row.count = acc.second;
      row.mean_performance = acc.second ? acc.first / static_cast<double>(acc.second) : 0.0;
      report.rows.push_back(std::move(row));
    }
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (excluded[i]) continue;
    for (std::size_t a = 0; a < algos; ++a) report.details.push_back(std::move(slots[i * algos + a]));
  }
  return report;
}

EvaluationReport evaluate_algorithms(const DatasetManifest& manifest, const EvaluationOptions& options) {
  std::map<std::string, std::shared_ptr<const std::vector<PatternDescriptor>>> templates;
  std::vector<EvaluationItem> items;
  for (const auto& r : manifest.records) {
    if (r.variation.swap_count == 0 || !options.filter.accepts(r)) continue;
    auto& patterns = templates[r.template_path];
    if (!patterns) {
      patterns = std::make_shared<const std::vector<PatternDescriptor>>(
          read_sidecar(manifest.root / r.template_path).patterns);
    }
    EvaluationItem item;
    item.key = r.path;
    item.template_id = r.template_id;
    item.ptype = r.ptype;
    item.kind = r.kind;
    item.n = r.n;
    item.swap_count = r.variation.swap_count;
    item.noise_level = r.variation.noise_level;
    item.cluster_noise_level = r.variation.cluster_noise_level;
    item.ground_truth = r.variation.ground_truth_score;
    item.path = manifest.root / r.path;
    item.patterns = patterns;
    items.push_back(std::move(item));
  }
  if (items.empty()) throw ConfigError("the filter selects no matrices with index swaps");
  return evaluate_items(items, options);
}

ScoreFileResult score_file(const fs::path& matrix_path, const std::optional<fs::path>& template_sidecar,
                           bool want_score, const std::vector<MetricId>& metrics) {
  const Matrix m = read_rbm(matrix_path);
  ScoreFileResult result;
  if (want_score) {
    fs::path side;
    if (template_sidecar) {
      side = *template_sidecar;
    } else if (fs::exists(sidecar_path(matrix_path))) {
      side = sidecar_path(matrix_path);
    } else {
      throw PreconditionError("the convolution-entropy score needs template patterns: pass --template");
    }
    const Sidecar s = read_sidecar(side);
    result.score = score_matrix(m, s.kind, s.patterns);
  }
  for (MetricId id : metrics) result.metrics.emplace_back(id, eval_metric_on(id, m));
  return result;
}

}  // namespace patternbench
