#include "patternbench/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "patternbench/errors.hpp"

namespace patternbench {

std::vector<Kernel> derive_kernels(std::span<const PatternDescriptor> patterns) {
  std::vector<Kernel> kernels;
  kernels.reserve(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    Kernel k{patterns[i], patterns[i].kernel_area(), i};
    k.pattern.anchors.clear();  // geometry only
    kernels.push_back(std::move(k));
  }
  std::stable_sort(kernels.begin(), kernels.end(),
                   [](const Kernel& a, const Kernel& b) { return a.area > b.area; });
  return kernels;
}

namespace {

// Summed-area table with an extra zero row/column, plus diagonal running
// sums for band kernels.
class CountTables {
 public:
  template <typename Pred>
  CountTables(std::size_t n, Pred is_set)
      : n_(static_cast<int>(n)),
        rect_((n + 1) * (n + 1), 0),
        diag_((n + 1) * (n + 1), 0) {
    const int m = n_ + 1;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const int v = is_set(i, j) ? 1 : 0;
        rect_[idx(i + 1, j + 1, m)] =
            v + rect_[idx(i, j + 1, m)] + rect_[idx(i + 1, j, m)] - rect_[idx(i, j, m)];
        diag_[idx(i + 1, j + 1, m)] = v + diag_[idx(i, j, m)];
      }
    }
  }

  // Count over rows [r0,r1) x cols [c0,c1).
  int rect(int r0, int r1, int c0, int c1) const {
    const int m = n_ + 1;
    return rect_[idx(r1, c1, m)] - rect_[idx(r0, c1, m)] - rect_[idx(r1, c0, m)] +
           rect_[idx(r0, c0, m)];
  }

  // Count over cells (r0+t, c0+t), t in [0, len).
  int diagonal(int r0, int c0, int len) const {
    const int m = n_ + 1;
    return diag_[idx(r0 + len, c0 + len, m)] - diag_[idx(r0, c0, m)];
  }

  int over(const PatternDescriptor& p) const {
    switch (p.type) {
      case PatternType::Block:
      case PatternType::OffDiagonalBlock:
        return rect(p.rows.lo, p.rows.hi, p.cols.lo, p.cols.hi);
      case PatternType::Star: {
        const int c0 = p.center;
        const int c1 = p.center + p.width;
        return rect(c0, c1, p.cols.lo, p.cols.hi) + rect(p.rows.lo, p.rows.hi, c0, c1) -
               rect(c0, c1, c0, c1);
      }
      case PatternType::Band: {
        int total = 0;
        for (int k = 0; k < p.width; ++k) total += diagonal(p.rows.lo, p.cols.lo + k, p.rows.length());
        return total;
      }
    }
    return 0;
  }

 private:
  static std::size_t idx(int r, int c, int m) {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(m) + static_cast<std::size_t>(c);
  }

  int n_;
  std::vector<int> rect_;
  std::vector<int> diag_;
};

template <typename Visit>
void for_each_placement(const PatternDescriptor& k, int n, Visit visit) {
  if (k.type == PatternType::Block || k.type == PatternType::Star) {
    for (int t = -k.rows.lo; t <= n - k.rows.hi; ++t) visit(k.translated(t, t));
    return;
  }
  const int height = k.rows.length();
  const int width = k.cols.length();
  for (int r0 = 0; r0 + height <= n; ++r0) {
    // Strictly above the diagonal: rectangles need c0 >= r0 + height, bands c0 > r0.
    const int first_c0 = k.type == PatternType::OffDiagonalBlock ? r0 + height : r0 + 1;
    for (int c0 = first_c0; c0 + width <= n; ++c0) {
      visit(k.translated(r0 - k.rows.lo, c0 - k.cols.lo));
    }
  }
}

}  // namespace

MatchResult match_pattern(const Matrix& binary, const Kernel& kernel, const CellSet& occupied) {
  const std::size_t n = binary.size();
  if (occupied.size() != n) throw DimensionError("occupied set size differs from matrix size");
  const CountTables ones(n, [&](int i, int j) { return binary(i, j) > 0.0f; });
  const CountTables taken(n, [&](int i, int j) { return occupied.contains(i, j); });

  MatchResult best;
  best.region = kernel.pattern;
  for_each_placement(kernel.pattern, static_cast<int>(n), [&](const PatternDescriptor& p) {
    if (taken.over(p) != 0) return;
    const int conv = ones.over(p);
    if (!best.found || conv > best.convolution) {
      best.found = true;
      best.convolution = conv;
      best.region = p;
    }
  });
  return best;
}

double existence_score(const Matrix& binary, std::span<const Cell> region) {
  if (region.empty()) throw PreconditionError("existence_score: empty region");
  std::size_t nonzero = 0;
  for (const Cell& c : region) {
    if (binary(static_cast<std::size_t>(c.row), static_cast<std::size_t>(c.col)) > 0.0f) ++nonzero;
  }
  return static_cast<double>(nonzero) / static_cast<double>(region.size());
}

double disorder_score(const Matrix& binary, std::span<const Cell> region) {
  if (region.size() < 2) return 0.0;
  int r0 = std::numeric_limits<int>::max(), r1 = std::numeric_limits<int>::min();
  int c0 = std::numeric_limits<int>::max(), c1 = std::numeric_limits<int>::min();
  for (const Cell& c : region) {
    r0 = std::min(r0, c.row);
    r1 = std::max(r1, c.row);
    c0 = std::min(c0, c.col);
    c1 = std::max(c1, c.col);
  }
  const int h = r1 - r0 + 1;
  const int w = c1 - c0 + 1;
  // 1 = unvisited nonzero region cell, 0 = anything else.
  std::vector<unsigned char> grid(static_cast<std::size_t>(h) * static_cast<std::size_t>(w), 0);
  auto at = [&](int r, int c) -> unsigned char& {
    return grid[static_cast<std::size_t>(r - r0) * static_cast<std::size_t>(w) +
                static_cast<std::size_t>(c - c0)];
  };
  std::size_t nonzero = 0;
  for (const Cell& c : region) {
    if (binary(static_cast<std::size_t>(c.row), static_cast<std::size_t>(c.col)) > 0.0f &&
        at(c.row, c.col) == 0) {
      at(c.row, c.col) = 1;
      ++nonzero;
    }
  }
  if (nonzero == 0) return 0.0;

  std::vector<std::size_t> sizes;
  std::vector<Cell> stack;
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      if (at(r, c) != 1) continue;
      std::size_t size = 0;
      at(r, c) = 0;
      stack.push_back({r, c});
      while (!stack.empty()) {
        const Cell cur = stack.back();
        stack.pop_back();
        ++size;
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            const int nr = cur.row + dr;
            const int nc = cur.col + dc;
            if (nr < r0 || nr > r1 || nc < c0 || nc > c1) continue;
            if (at(nr, nc) == 1) {
              at(nr, nc) = 0;
              stack.push_back({nr, nc});
            }
          }
        }
      }
      sizes.push_back(size);
    }
  }
  if (sizes.size() <= 1) return 0.0;
  double entropy = 0.0;
  for (std::size_t s : sizes) {
    const double pr = static_cast<double>(s) / static_cast<double>(nonzero);
    entropy -= pr * std::log(pr);
  }
  return std::clamp(entropy / std::log(static_cast<double>(region.size())), 0.0, 1.0);
}

namespace {

// Accumulates pair weights along one walk that starts next to the diagonal
// and moves away from it; `line` holds the nonzero values in walk order.
void accumulate_walk(const std::vector<double>& line, ViolationSums& sums) {
  for (std::size_t p = 0; p < line.size(); ++p) {
    const double closer = line[p];
    for (std::size_t q = p + 1; q < line.size(); ++q) {
      const double farther = line[q];
      const double w = std::abs(closer - farther);
      sums.total += w;
      if (closer < farther) sums.violation += w;
    }
  }
}

}  // namespace

ViolationSums robinson_violations(const LocalGrid& grid, DiagonalLine line, bool both_sides) {
  ViolationSums sums;
  std::vector<double> walk;
  walk.reserve(static_cast<std::size_t>(std::max(grid.rows, grid.cols)));
  auto push = [&](double v) {
    if (v > 0.0) walk.push_back(v);
  };

  for (int a = 0; a < grid.rows; ++a) {
    const int diag_col = line.anti ? line.offset - a : a + line.offset;
    walk.clear();
    for (int b = std::max(diag_col + 1, 0); b < grid.cols; ++b) push(grid(a, b));
    accumulate_walk(walk, sums);
    if (both_sides) {
      walk.clear();
      for (int b = std::min(diag_col - 1, grid.cols - 1); b >= 0; --b) push(grid(a, b));
      accumulate_walk(walk, sums);
    }
  }
  for (int b = 0; b < grid.cols; ++b) {
    const int diag_row = line.anti ? line.offset - b : b - line.offset;
    walk.clear();
    for (int a = std::min(diag_row - 1, grid.rows - 1); a >= 0; --a) push(grid(a, b));
    accumulate_walk(walk, sums);
    if (both_sides) {
      walk.clear();
      for (int a = std::max(diag_row + 1, 0); a < grid.rows; ++a) push(grid(a, b));
      accumulate_walk(walk, sums);
    }
  }
  return sums;
}

std::vector<DiagonalLine> candidate_diagonals(int rows, int cols) {
  std::vector<DiagonalLine> out;
  out.reserve(static_cast<std::size_t>(2 * (rows + cols - 1)));
  for (int s = 0; s <= rows + cols - 2; ++s) out.push_back({true, s});
  for (int d = -(rows - 1); d <= cols - 1; ++d) out.push_back({false, d});
  return out;
}

namespace {

LocalGrid local_frame(const Matrix& m, const PatternDescriptor& region) {
  LocalGrid g;
  g.rows = region.rows.length();
  g.cols = region.cols.length();
  g.values.assign(static_cast<std::size_t>(g.rows) * static_cast<std::size_t>(g.cols), 0.0);
  for_each_kernel_cell(region, [&](Cell c) {
    const std::size_t at = static_cast<std::size_t>(c.row - region.rows.lo) *
                               static_cast<std::size_t>(g.cols) +
                           static_cast<std::size_t>(c.col - region.cols.lo);
    g.values[at] = m(static_cast<std::size_t>(c.row), static_cast<std::size_t>(c.col));
  });
  return g;
}

}  // namespace

double deviation_score(const Matrix& m, const PatternDescriptor& region,
                       const ScoringOptions& options) {
  if (m.is_binary()) return 0.0;
  switch (region.type) {
    case PatternType::Block:
    case PatternType::Star:
      return robinson_violations(local_frame(m, region), {false, 0}, false).ratio();
    case PatternType::OffDiagonalBlock: {
      const LocalGrid g = local_frame(m, region);
      double best = 1.0;
      for (const DiagonalLine& line : candidate_diagonals(g.rows, g.cols)) {
        best = std::min(best, robinson_violations(g, line, true).ratio());
        if (best == 0.0) break;
      }
      return best;
    }
    case PatternType::Band:
      if (!options.band_deviation) return 0.0;
      // Measured against the band's first diagonal (local col == row).
      return robinson_violations(local_frame(m, region), {false, 0}, true).ratio();
  }
  return 0.0;
}

double region_score(double existence, double disorder, double deviation) {
  return existence * (1.0 - disorder) * (1.0 - deviation);
}

ScoreReport score_matrix(const Matrix& variation, const Template& reference,
                         const ScoringOptions& options) {
  if (variation.size() != reference.size()) {
    throw DimensionError("variation size " + std::to_string(variation.size()) +
                         " differs from template size " + std::to_string(reference.size()));
  }
  return score_matrix(variation, reference.kind(), reference.patterns, options);
}

ScoreReport score_matrix(const Matrix& variation, MatrixKind expected_kind,
                         std::span<const PatternDescriptor> patterns,
                         const ScoringOptions& options) {
  if (variation.kind() != expected_kind) {
    throw KindError("variation kind '" + std::string(to_string(variation.kind())) +
                    "' differs from template kind '" + std::string(to_string(expected_kind)) + "'");
  }
  if (patterns.empty()) throw PreconditionError("template has no patterns");
  const int n = static_cast<int>(variation.size());
  for (const auto& p : patterns) p.validate(n);

  const Matrix binary = binarize(variation);
  CellSet occupied(variation.size());
  ScoreReport report;
  double weighted = 0.0;
  double total_area = 0.0;
  for (const Kernel& k : derive_kernels(patterns)) {
    const MatchResult match = match_pattern(binary, k, occupied);
    MatchedRegion r;
    r.region = match.region;
    r.pattern_index = k.source_index;
    r.area = k.area;
    r.matched = match.found;
    if (match.found) {
      const auto cells = kernel_cells(match.region);
      for (const Cell& c : cells) occupied.insert_symmetric(c.row, c.col);
      r.convolution = match.convolution;
      r.existence = static_cast<double>(match.convolution) / static_cast<double>(k.area);
      if (match.convolution > 0) {
        r.disorder = disorder_score(binary, cells);
        r.deviation = deviation_score(variation, match.region, options);
      }
      r.score = region_score(r.existence, r.disorder, r.deviation);
    }
    weighted += static_cast<double>(r.area) * r.score;
    total_area += static_cast<double>(r.area);
    report.regions.push_back(std::move(r));
  }
  report.final_score = total_area > 0.0 ? weighted / total_area : 0.0;
  return report;
}

}  // namespace patternbench
