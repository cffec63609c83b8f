#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "patternbench/matrix.hpp"

namespace patternbench {

enum class MetricId { ME, LA, MoranI, ARevents, ARdeviation, LinearSeriation, BAR };

inline constexpr MetricId kAllMetrics[] = {MetricId::ME,          MetricId::LA,
                                          MetricId::MoranI,      MetricId::ARevents,
                                          MetricId::ARdeviation, MetricId::LinearSeriation,
                                          MetricId::BAR};

/// Short names: me, la, moran, ar_events, ar_deviation, linear_seriation, bar.
/// "ar" is accepted as an alias of ar_events.
std::string_view to_string(MetricId id);
MetricId parse_metric_id(std::string_view name);

/// True for metrics evaluated on a Matrix (ME, LA, MoranI); the others take
/// a DissimilarityMatrix.
bool consumes_matrix(MetricId id) noexcept;
/// True when a larger value means a better ordering.
bool higher_is_better(MetricId id) noexcept;

struct MetricParams {
  /// BAR band width; defaults to ceil(n/5).
  std::optional<int> bar_band;
};

double measure_of_effectiveness(const Matrix& m);
double linear_arrangement(const Matrix& m);
/// Global Moran's I over the n x n lattice with rook adjacency. For binary
/// input with density p, each adjacent pair contributes (1-p)^2 for 1-1,
/// p^2 for 0-0 and -p(1-p) for 0-1, normalized by N p (1-p) and the number
/// of adjacent pairs. Constant matrices give 0.
double morans_i(const Matrix& m);
double ar_events(const DissimilarityMatrix& d);
double ar_deviation(const DissimilarityMatrix& d);
/// -sum_{i<j} d_ij |i-j|.
double linear_seriation(const DissimilarityMatrix& d);
double banded_anti_robinson(const DissimilarityMatrix& d, std::optional<int> band = std::nullopt);

using MetricInput = std::variant<const Matrix*, const DissimilarityMatrix*>;

/// Throws KindError when the input type does not match the metric.
double eval_metric(MetricId id, MetricInput input, const MetricParams& params = {});

/// Convenience: evaluates on the matrix directly or on dissimilarity(m).
double eval_metric_on(MetricId id, const Matrix& m, const MetricParams& params = {});

/// The value reoriented so that higher is better.
double oriented(MetricId id, double raw) noexcept;

}  // namespace patternbench
