#include "patternbench/sidecar.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "patternbench/errors.hpp"

namespace patternbench {

Json to_json(const PatternDescriptor& p) {
  Json j;
  j["ptype"] = std::string(to_string(p.type));
  j["rows"] = {p.rows.lo, p.rows.hi};
  j["cols"] = {p.cols.lo, p.cols.hi};
  j["width"] = p.width;
  if (p.type == PatternType::Star) j["center"] = p.center;
  j["anchors"] = p.anchors;
  return j;
}

Json to_json(const ScoreReport& r) {
  Json regions = Json::array();
  for (const auto& m : r.regions) {
    int r0 = m.region.rows.hi, r1 = m.region.rows.lo, c0 = m.region.cols.hi, c1 = m.region.cols.lo;
    for_each_kernel_cell(m.region, [&](Cell c) {
      r0 = std::min(r0, c.row);
      r1 = std::max(r1, c.row + 1);
      c0 = std::min(c0, c.col);
      c1 = std::max(c1, c.col + 1);
    });
    regions.push_back({{"ptype", std::string(to_string(m.region.type))},
                       {"cells_bbox", {{r0, r1}, {c0, c1}}},
                       {"area", m.area},
                       {"matched", m.matched},
                       {"convolution", m.convolution},
                       {"existence", m.existence},
                       {"disorder", m.disorder},
                       {"deviation", m.deviation},
                       {"score", m.score}});
  }
  return {{"final", r.final_score}, {"regions", std::move(regions)}};
}

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'", 0);
  try {
    return it->get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what(), 0);
  }
}

Interval interval(const Json& j, const char* key) {
  const auto v = field<std::vector<int>>(j, key);
  if (v.size() != 2) throw ParseError(std::string("field '") + key + "' must be [lo, hi]", 0);
  return {v[0], v[1]};
}

}  // namespace

PatternDescriptor descriptor_from_json(const Json& j) {
  PatternDescriptor p;
  try {
    p.type = parse_pattern_type(field<std::string>(j, "ptype"));
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), 0);
  }
  p.rows = interval(j, "rows");
  p.cols = interval(j, "cols");
  p.width = j.contains("width") ? field<int>(j, "width") : 0;
  p.center = j.contains("center") ? field<int>(j, "center") : 0;
  if (j.contains("anchors")) p.anchors = field<std::vector<double>>(j, "anchors");
  return p;
}

Json to_json(const Sidecar& s) {
  Json j;
  j["template_id"] = s.template_id;
  j["n"] = s.n;
  j["kind"] = std::string(to_string(s.kind));
  j["ptype"] = std::string(to_string(s.ptype));
  j["template_seed"] = s.template_seed;
  if (!s.split.empty()) j["split"] = s.split;
  if (s.variation) {
    const auto& v = *s.variation;
    j["draw_index"] = v.draw_index;
    j["noise_level"] = v.noise_level;
    j["cluster_noise_level"] = v.cluster_noise_level;
    j["swap_count"] = v.swap_count;
    j["seed"] = v.seed;
    j["score"] = v.score;
    j["ground_truth_score"] = v.ground_truth_score;
  }
  Json patterns = Json::array();
  for (const auto& p : s.patterns) patterns.push_back(to_json(p));
  j["patterns"] = std::move(patterns);
  return j;
}

Sidecar sidecar_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("sidecar must be a JSON object", 0);
  Sidecar s;
  s.template_id = field<std::string>(j, "template_id");
  s.n = field<std::size_t>(j, "n");
  try {
    s.kind = parse_matrix_kind(field<std::string>(j, "kind"));
    s.ptype = parse_pattern_type(field<std::string>(j, "ptype"));
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), 0);
  }
  s.template_seed = j.contains("template_seed") ? field<std::uint64_t>(j, "template_seed") : 0;
  if (j.contains("split")) s.split = field<std::string>(j, "split");
  if (j.contains("swap_count")) {
    VariationProvenance v;
    v.draw_index = field<int>(j, "draw_index");
    v.noise_level = field<int>(j, "noise_level");
    v.cluster_noise_level = field<int>(j, "cluster_noise_level");
    v.swap_count = field<std::size_t>(j, "swap_count");
    v.seed = field<std::uint64_t>(j, "seed");
    v.score = field<double>(j, "score");
    v.ground_truth_score = field<double>(j, "ground_truth_score");
    s.variation = v;
  }
  const auto it = j.find("patterns");
  if (it == j.end() || !it->is_array()) throw ParseError("missing array 'patterns'", 0);
  for (const auto& p : *it) s.patterns.push_back(descriptor_from_json(p));
  return s;
}

Sidecar template_sidecar(const Template& t) {
  Sidecar s;
  s.template_id = t.template_id;
  s.n = t.size();
  s.kind = t.kind();
  s.ptype = t.type;
  s.template_seed = t.seed;
  s.patterns = t.patterns;
  return s;
}

Sidecar variation_sidecar(const Template& t, const VariationRecord& r) {
  Sidecar s = template_sidecar(t);
  VariationProvenance v;
  v.draw_index = r.draw_index;
  v.noise_level = r.noise_level;
  v.cluster_noise_level = r.cluster_noise_level;
  v.swap_count = r.swap_count;
  v.seed = r.seed;
  v.score = r.score;
  v.ground_truth_score = r.ground_truth_score;
  s.variation = v;
  return s;
}

std::filesystem::path sidecar_path(const std::filesystem::path& matrix_path) {
  auto p = matrix_path;
  p.replace_extension(".json");
  return p;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_sidecar(const std::filesystem::path& path, const Sidecar& s) {
  write_text_file(path, to_json(s).dump(2) + "\n");
}

Sidecar read_sidecar(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + path.string() + "': invalid JSON", e.byte);
  }
  try {
    return sidecar_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError("'" + path.string() + "': " + e.detail(), e.offset());
  }
}

}  // namespace patternbench
