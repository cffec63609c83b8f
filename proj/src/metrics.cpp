#include "patternbench/metrics.hpp"

#include <cmath>
#include <string>

#include "patternbench/errors.hpp"

namespace patternbench {

std::string_view to_string(MetricId id) {
  switch (id) {
    case MetricId::ME: return "me";
    case MetricId::LA: return "la";
    case MetricId::MoranI: return "moran";
    case MetricId::ARevents: return "ar_events";
    case MetricId::ARdeviation: return "ar_deviation";
    case MetricId::LinearSeriation: return "linear_seriation";
    case MetricId::BAR: return "bar";
  }
  return "?";
}

MetricId parse_metric_id(std::string_view name) {
  for (MetricId id : kAllMetrics) {
    if (to_string(id) == name) return id;
  }
  if (name == "ar") return MetricId::ARevents;
  if (name == "morani" || name == "moran_i") return MetricId::MoranI;
  if (name == "ls") return MetricId::LinearSeriation;
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

bool consumes_matrix(MetricId id) noexcept {
  return id == MetricId::ME || id == MetricId::LA || id == MetricId::MoranI;
}

bool higher_is_better(MetricId id) noexcept {
  return id == MetricId::ME || id == MetricId::MoranI;
}

double measure_of_effectiveness(const Matrix& m) {
  const std::size_t n = m.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = m(i, j);
      if (a == 0.0) continue;
      double nb = 0.0;
      if (j > 0) nb += m(i, j - 1);
      if (j + 1 < n) nb += m(i, j + 1);
      if (i > 0) nb += m(i - 1, j);
      if (i + 1 < n) nb += m(i + 1, j);
      sum += a * nb;
    }
  }
  return 0.5 * sum;
}

double linear_arrangement(const Matrix& m) {
  const std::size_t n = m.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) > 0.0f) sum += static_cast<double>(j - i);
    }
  }
  return sum;
}

double morans_i(const Matrix& m) {
  const std::size_t n = m.size();
  if (n < 2) return 0.0;
  const auto values = m.values();
  double mean = 0.0;
  for (float v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double variance = 0.0;
  for (float v : values) variance += (v - mean) * (v - mean);
  if (variance == 0.0) return 0.0;

  // Each unordered rook-adjacent pair counted once; the weight matrix is
  // symmetric so W = 2 * pairs and the cross sum doubles as well.
  double cross = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = m(i, j) - mean;
      if (j + 1 < n) {
        cross += x * (m(i, j + 1) - mean);
        pairs += 1.0;
      }
      if (i + 1 < n) {
        cross += x * (m(i + 1, j) - mean);
        pairs += 1.0;
      }
    }
  }
  return static_cast<double>(values.size()) / pairs * cross / variance;
}

double ar_events(const DissimilarityMatrix& d) {
  const std::size_t n = d.size();
  double count = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      const double dij = d(i, j);
      for (std::size_t k = i + 1; k < j; ++k) {
        if (d(i, k) > dij || d(k, j) > dij) count += 1.0;
      }
    }
  }
  return count;
}

double ar_deviation(const DissimilarityMatrix& d) {
  const std::size_t n = d.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      const double dij = d(i, j);
      for (std::size_t k = i + 1; k < j; ++k) {
        if (d(i, k) > dij) sum += d(i, k) - dij;
        if (d(k, j) > dij) sum += d(k, j) - dij;
      }
    }
  }
  return sum;
}

double linear_seriation(const DissimilarityMatrix& d) {
  const std::size_t n = d.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) sum += d(i, j) * static_cast<double>(j - i);
  }
  return -sum;
}

double banded_anti_robinson(const DissimilarityMatrix& d, std::optional<int> band) {
  const auto n = static_cast<int>(d.size());
  const int b = band ? *band : (n + 4) / 5;
  if (b < 0) throw PreconditionError("BAR band width must be nonnegative");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - b); j <= std::min(n - 1, i + b); ++j) {
      sum += static_cast<double>(b - std::abs(i - j)) *
             d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return sum;
}

double eval_metric(MetricId id, MetricInput input, const MetricParams& params) {
  if (consumes_matrix(id)) {
    const auto* const* m = std::get_if<const Matrix*>(&input);
    if (m == nullptr || *m == nullptr) {
      throw KindError("metric " + std::string(to_string(id)) + " needs a matrix");
    }
    switch (id) {
      case MetricId::ME: return measure_of_effectiveness(**m);
      case MetricId::LA: return linear_arrangement(**m);
      default: return morans_i(**m);
    }
  }
  const auto* const* d = std::get_if<const DissimilarityMatrix*>(&input);
  if (d == nullptr || *d == nullptr) {
    throw KindError("metric " + std::string(to_string(id)) + " needs a dissimilarity matrix");
  }
  switch (id) {
    case MetricId::ARevents: return ar_events(**d);
    case MetricId::ARdeviation: return ar_deviation(**d);
    case MetricId::LinearSeriation: return linear_seriation(**d);
    default: return banded_anti_robinson(**d, params.bar_band);
  }
}

double eval_metric_on(MetricId id, const Matrix& m, const MetricParams& params) {
  if (consumes_matrix(id)) return eval_metric(id, &m, params);
  const DissimilarityMatrix d = dissimilarity(m);
  return eval_metric(id, &d, params);
}

double oriented(MetricId id, double raw) noexcept { return higher_is_better(id) ? raw : -raw; }

}  // namespace patternbench
