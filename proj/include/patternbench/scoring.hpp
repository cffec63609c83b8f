#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "patternbench/pattern.hpp"

namespace patternbench {

struct ScoringOptions {
  /// Bands have no Robinson structure; their deviation is 0 unless enabled,
  /// in which case it is measured against the band's own diagonal.
  bool band_deviation = false;
};

/// Matched filter for one template pattern. The footprint is the pattern's
/// kernel (a single mirrored component for off-diagonal types); Block and
/// Star kernels slide along the diagonal, the others over the strict upper
/// triangle.
struct Kernel {
  PatternDescriptor pattern;
  int area = 0;
  std::size_t source_index = 0;
};

/// One kernel per pattern, sorted by area descending (stable).
std::vector<Kernel> derive_kernels(std::span<const PatternDescriptor> patterns);

/// n x n boolean cell set.
class CellSet {
 public:
  explicit CellSet(std::size_t n) : n_(n), cells_(n * n, 0) {}
  std::size_t size() const noexcept { return n_; }
  bool contains(int r, int c) const noexcept {
    return cells_[static_cast<std::size_t>(r) * n_ + static_cast<std::size_t>(c)] != 0;
  }
  void insert(int r, int c) noexcept {
    cells_[static_cast<std::size_t>(r) * n_ + static_cast<std::size_t>(c)] = 1;
  }
  /// Inserts the cell and its mirror.
  void insert_symmetric(int r, int c) noexcept {
    insert(r, c);
    insert(c, r);
  }

 private:
  std::size_t n_;
  std::vector<unsigned char> cells_;
};

struct MatchResult {
  bool found = false;
  /// The kernel pattern translated to the matched placement (or left at its
  /// template position when nothing was feasible).
  PatternDescriptor region;
  /// Count of ones of the binary matrix inside the translated footprint.
  int convolution = 0;
};

/// Scans every legal placement of the kernel, skipping those that intersect
/// `occupied`, and returns the one with the highest convolution; ties go to
/// the smallest top-left (row, then column).
MatchResult match_pattern(const Matrix& binary, const Kernel& kernel, const CellSet& occupied);

/// Fraction of region cells that are nonzero in `binary`.
double existence_score(const Matrix& binary, std::span<const Cell> region);

/// Normalized entropy of the 8-connected nonzero component sizes inside the
/// region: (-sum pr_i ln pr_i) / ln |region|. 0 for fewer than two cells or
/// no nonzero cells.
double disorder_score(const Matrix& binary, std::span<const Cell> region);

/// Weighted Robinson violations of a dense local grid relative to one
/// diagonal line. Cells equal to 0 carry no weight.
struct ViolationSums {
  double violation = 0.0;
  double total = 0.0;
  double ratio() const noexcept { return total > 0.0 ? violation / total : 0.0; }
};

struct DiagonalLine {
  bool anti = false;  ///< false: col - row == offset; true: row + col == offset
  int offset = 0;
};

struct LocalGrid {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // row-major
  double operator()(int r, int c) const noexcept {
    return values[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                  static_cast<std::size_t>(c)];
  }
};

/// Walks every row and column away from the diagonal line and accumulates
/// |a - b| over nonzero pairs (closer a, farther b), counting it as a
/// violation when a < b. With both_sides false only cells right of the line
/// (rows) and above it (columns) are used, which for a symmetric square grid
/// and the main diagonal is exactly the triple sum i<k<j of the deviation
/// formula.
ViolationSums robinson_violations(const LocalGrid& grid, DiagonalLine line, bool both_sides);

/// All diagonals of a rows x cols rectangle in both orientations.
std::vector<DiagonalLine> candidate_diagonals(int rows, int cols);

/// Deviation score S^v of a matched region in m. 0 for binary matrices and
/// (by default) bands; the Robinson deviation over the local frame for
/// Block and Star; the minimum over candidate diagonals for off-diagonal
/// blocks.
double deviation_score(const Matrix& m, const PatternDescriptor& region,
                       const ScoringOptions& options = {});

/// S = S^e (1 - S^d) (1 - S^v).
double region_score(double existence, double disorder, double deviation);

struct MatchedRegion {
  PatternDescriptor region;
  std::size_t pattern_index = 0;
  int area = 0;
  int convolution = 0;
  bool matched = false;
  double existence = 0.0;
  double disorder = 0.0;
  double deviation = 0.0;
  double score = 0.0;
};

struct ScoreReport {
  double final_score = 0.0;
  std::vector<MatchedRegion> regions;  // in matching order (largest first)
};

/// Greedy largest-first matching followed by area-weighted aggregation of
/// region scores. Throws DimensionError / KindError on mismatches.
ScoreReport score_matrix(const Matrix& variation, const Template& reference,
                         const ScoringOptions& options = {});
ScoreReport score_matrix(const Matrix& variation, MatrixKind expected_kind,
                         std::span<const PatternDescriptor> patterns,
                         const ScoringOptions& options = {});

}  // namespace patternbench
