#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "patternbench/pattern.hpp"
#include "patternbench/scoring.hpp"
#include "patternbench/variation_gen.hpp"

namespace patternbench {

using Json = nlohmann::json;

/// Provenance of one variation (absent for template sidecars).
struct VariationProvenance {
  int draw_index = 0;
  int noise_level = 0;
  int cluster_noise_level = 0;
  std::size_t swap_count = 0;
  std::uint64_t seed = 0;
  double score = 0.0;
  double ground_truth_score = 0.0;
};

/// Metadata stored next to a .rbm file (same stem, ".json").
struct Sidecar {
  std::string template_id;
  std::size_t n = 0;
  MatrixKind kind = MatrixKind::Binary;
  PatternType ptype = PatternType::Block;
  std::uint64_t template_seed = 0;
  std::string split;  // empty when unassigned
  std::vector<PatternDescriptor> patterns;
  std::optional<VariationProvenance> variation;
};

Json to_json(const PatternDescriptor& p);
PatternDescriptor descriptor_from_json(const Json& j);
Json to_json(const Sidecar& s);
/// Throws ParseError on missing or ill-typed fields.
Sidecar sidecar_from_json(const Json& j);

/// {"final", "regions": [{"ptype", "cells_bbox", "area", "existence",
/// "disorder", "deviation", "score"}]}; cells_bbox is [[row lo, row hi),
/// [col lo, col hi)] of the matched kernel.
Json to_json(const ScoreReport& r);

Sidecar template_sidecar(const Template& t);
Sidecar variation_sidecar(const Template& t, const VariationRecord& r);

/// MATRIX.rbm -> MATRIX.json
std::filesystem::path sidecar_path(const std::filesystem::path& matrix_path);

void write_sidecar(const std::filesystem::path& path, const Sidecar& s);
Sidecar read_sidecar(const std::filesystem::path& path);

/// Writes text atomically enough for our purposes (truncate + write);
/// throws IoError naming the path.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace patternbench
