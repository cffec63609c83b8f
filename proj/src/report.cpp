#include "patternbench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "patternbench/errors.hpp"

namespace patternbench {

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "svg") return ReportFormat::Svg;
  throw ConfigError("unknown report format '" + std::string(name) + "'");
}

Json report_to_json(const EvaluationReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"algorithm", row.algorithm},
                    {"ptype", std::string(to_string(row.ptype))},
                    {"kind", std::string(to_string(row.kind))},
                    {"size", row.size},
                    {"mean_performance", row.mean_performance},
                    {"count", row.count}});
  }
  Json detail = Json::array();
  for (const auto& d : r.details) {
    detail.push_back({{"key", d.key},
                      {"template_id", d.template_id},
                      {"algorithm", d.algorithm},
                      {"ptype", std::string(to_string(d.ptype))},
                      {"kind", std::string(to_string(d.kind))},
                      {"size", d.size},
                      {"swap_count", d.swap_count},
                      {"noise_level", d.noise_level},
                      {"cluster_noise_level", d.cluster_noise_level},
                      {"score", d.score},
                      {"ground_truth", d.ground_truth},
                      {"ratio", d.ratio}});
  }
  return {{"rows", rows}, {"detail", detail}, {"excluded", r.excluded}};
}

EvaluationReport report_from_json(const Json& j) {
  try {
    EvaluationReport r;
    for (const auto& row : j.at("rows")) {
      EvaluationRow e;
      e.algorithm = row.at("algorithm").get<std::string>();
      e.ptype = parse_pattern_type(row.at("ptype").get<std::string>());
      e.kind = parse_matrix_kind(row.at("kind").get<std::string>());
      e.size = row.at("size").get<std::size_t>();
      e.mean_performance = row.at("mean_performance").get<double>();
      e.count = row.at("count").get<std::size_t>();
      r.rows.push_back(std::move(e));
    }
    if (j.contains("detail")) {
      for (const auto& d : j.at("detail")) {
        EvaluationDetail e;
        e.key = d.at("key").get<std::string>();
        e.template_id = d.at("template_id").get<std::string>();
        e.algorithm = d.at("algorithm").get<std::string>();
        e.ptype = parse_pattern_type(d.at("ptype").get<std::string>());
        e.kind = parse_matrix_kind(d.at("kind").get<std::string>());
        e.size = d.at("size").get<std::size_t>();
        e.swap_count = d.at("swap_count").get<std::size_t>();
        e.noise_level = d.at("noise_level").get<int>();
        e.cluster_noise_level = d.at("cluster_noise_level").get<int>();
        e.score = d.at("score").get<double>();
        e.ground_truth = d.at("ground_truth").get<double>();
        e.ratio = d.at("ratio").get<double>();
        r.details.push_back(std::move(e));
      }
    }
    r.excluded = j.value("excluded", std::size_t{0});
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("report: ") + e.what(), 0);
  } catch (const ConfigError& e) {
    throw ParseError(std::string("report: ") + e.what(), 0);
  }
}

namespace {

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string report_csv(const EvaluationReport& r) {
  std::string out = "algorithm,ptype,kind,size,mean_performance,count\n";
  for (const auto& row : r.rows) {
    out += row.algorithm + "," + std::string(to_string(row.ptype)) + "," + std::string(to_string(row.kind)) +
           "," + std::to_string(row.size) + "," + exact(row.mean_performance) + "," +
           std::to_string(row.count) + "\n";
  }
  return out;
}

std::vector<EvaluationRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<EvaluationRow> rows;
  std::size_t offset = 0;
  bool header = true;
  while (std::getline(in, line)) {
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 6) throw ParseError("CSV row must have 6 fields", line_offset);
    try {
      EvaluationRow row;
      row.algorithm = cells[0];
      row.ptype = parse_pattern_type(cells[1]);
      row.kind = parse_matrix_kind(cells[2]);
      row.size = std::stoul(cells[3]);
      row.mean_performance = std::stod(cells[4]);
      row.count = std::stoul(cells[5]);
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad CSV row: ") + e.what(), line_offset);
    }
  }
  return rows;
}

std::string report_svg(const EvaluationReport& r) {
  std::vector<std::string> algos;
  std::vector<PatternType> ptypes;
  std::map<std::pair<std::string, int>, std::pair<double, std::size_t>> acc;
  for (const auto& row : r.rows) {
    if (std::find(algos.begin(), algos.end(), row.algorithm) == algos.end()) algos.push_back(row.algorithm);
    if (std::find(ptypes.begin(), ptypes.end(), row.ptype) == ptypes.end()) ptypes.push_back(row.ptype);
    auto& a = acc[{row.algorithm, static_cast<int>(row.ptype)}];
    a.first += row.mean_performance * static_cast<double>(row.count);
    a.second += row.count;
  }
  std::sort(ptypes.begin(), ptypes.end());
  double top = 1.0;
  for (const auto& [key, a] : acc) {
    if (a.second) top = std::max(top, a.first / static_cast<double>(a.second));
  }

  const int bar = 18;
  const int gap = 24;
  const int left = 60;
  const int plot_h = 240;
  const int base_y = 30 + plot_h;
  const int group_w = static_cast<int>(algos.size()) * bar + gap;
  const int width = left + static_cast<int>(ptypes.size()) * group_w + 160;
  const int height = base_y + 50;
  static const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
                                  "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#2ca02c"};

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s << "<text x=\"" << left << "\" y=\"18\" font-size=\"13\">Mean performance by pattern</text>\n";
  s << "<line x1=\"" << left << "\" y1=\"30\" x2=\"" << left << "\" y2=\"" << base_y << "\" stroke=\"#333\"/>\n";
  s << "<line x1=\"" << left << "\" y1=\"" << base_y << "\" x2=\"" << width - 150 << "\" y2=\"" << base_y
    << "\" stroke=\"#333\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = top * tick / 4.0;
    const int y = base_y - static_cast<int>(plot_h * tick / 4.0);
    char label[16];
    std::snprintf(label, sizeof label, "%.2f", v);
    s << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << label << "</text>\n";
  }
  for (std::size_t p = 0; p < ptypes.size(); ++p) {
    const int gx = left + gap / 2 + static_cast<int>(p) * group_w;
    for (std::size_t a = 0; a < algos.size(); ++a) {
      const auto it = acc.find({algos[a], static_cast<int>(ptypes[p])});
      if (it == acc.end() || it->second.second == 0) continue;
      const double mean = it->second.first / static_cast<double>(it->second.second);
      const int h = static_cast<int>(plot_h * std::max(0.0, mean) / top);
      char value[16];
      std::snprintf(value, sizeof value, "%.3f", mean);
      s << "<rect x=\"" << gx + static_cast<int>(a) * bar << "\" y=\"" << base_y - h << "\" width=\"" << bar - 2
        << "\" height=\"" << h << "\" fill=\"" << palette[a % 12] << "\"><title>" << escape_xml(algos[a])
        << " / " << to_string(ptypes[p]) << ": " << value << "</title></rect>\n";
    }
    s << "<text x=\"" << gx + static_cast<int>(algos.size()) * bar / 2 << "\" y=\"" << base_y + 16
      << "\" text-anchor=\"middle\">" << to_string(ptypes[p]) << "</text>\n";
  }
  const int lx = width - 140;
  for (std::size_t a = 0; a < algos.size(); ++a) {
    const int ly = 34 + static_cast<int>(a) * 16;
    s << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"10\" height=\"10\" fill=\"" << palette[a % 12]
      << "\"/>\n";
    s << "<text x=\"" << lx + 14 << "\" y=\"" << ly + 9 << "\">" << escape_xml(algos[a]) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> emit_report(const EvaluationReport& r, const std::vector<ReportFormat>& formats,
                                               const std::filesystem::path& base) {
  if (r.rows.empty()) throw PreconditionError("report has no rows; the evaluation filter selected nothing");
  if (formats.empty()) throw ConfigError("no report formats requested");
  std::vector<std::filesystem::path> written;
  for (ReportFormat f : formats) {
    auto path = base;
    switch (f) {
      case ReportFormat::Csv:
        path.replace_extension(".csv");
        write_text_file(path, report_csv(r));
        break;
      case ReportFormat::Json:
        path.replace_extension(".json");
        write_text_file(path, report_to_json(r).dump(2) + "\n");
        break;
      case ReportFormat::Svg:
        path.replace_extension(".svg");
        write_text_file(path, report_svg(r));
        break;
    }
    written.push_back(path);
  }
  return written;
}

EvaluationReport read_report(const std::filesystem::path& json_path) {
  const std::string text = read_text_file(json_path);
  try {
    return report_from_json(Json::parse(text));
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + json_path.string() + "': invalid JSON", e.byte);
  }
}

}  // namespace patternbench
