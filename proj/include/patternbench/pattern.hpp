#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patternbench/matrix.hpp"

namespace patternbench {

enum class PatternType : unsigned char { Block, OffDiagonalBlock, Star, Band };

inline constexpr PatternType kAllPatternTypes[] = {PatternType::Block, PatternType::OffDiagonalBlock,
                                                   PatternType::Star, PatternType::Band};

std::string_view to_string(PatternType type);
PatternType parse_pattern_type(std::string_view name);

/// Half-open index interval [lo, hi).
struct Interval {
  int lo = 0;
  int hi = 0;

  int length() const noexcept { return hi - lo; }
  bool contains(int i) const noexcept { return i >= lo && i < hi; }
  Interval shifted(int by) const noexcept { return {lo + by, hi + by}; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// One visual pattern instance.
///
/// Geometry by type (all footprints are mirrored into the lower triangle):
///   Block            rows == cols == [lo, hi): an all-ones square on the diagonal.
///   OffDiagonalBlock rows [r0, r0+u) x cols [c0, c0+v) with c0 >= r0+u.
///   Star             rows == cols == span; center rows [center, center+width);
///                    cells in span x span whose row or column is a center row.
///   Band             rows [r0, r0+L), width w, cols [c0, c0+L+w-1) with c0 > r0;
///                    cells (r0+t, c0+t+k) for t in [0,L), k in [0,w).
/// anchors holds the ascending Robinson anchors for continuous templates
/// (span length for Block/Star, max(u,v) for OffDiagonalBlock, empty for Band).
struct PatternDescriptor {
  PatternType type = PatternType::Block;
  Interval rows;
  Interval cols;
  int width = 0;
  int center = 0;
  std::vector<double> anchors;

  static PatternDescriptor block(int lo, int hi);
  static PatternDescriptor off_diagonal(Interval rows, Interval cols);
  static PatternDescriptor star(Interval span, int center, int width);
  static PatternDescriptor band(int row0, int col0, int length, int width);

  /// Length of a band (rows.length()).
  int band_length() const noexcept { return rows.length(); }
  int band_offset() const noexcept { return cols.lo - rows.lo; }

  /// Number of cells in the kernel: one mirrored component for off-diagonal
  /// types, the full symmetric footprint for Block and Star.
  int kernel_area() const noexcept;

  /// Moves the pattern by (dr, dc). Block and Star only move along the
  /// diagonal; callers pass dr == dc for them.
  PatternDescriptor translated(int dr, int dc) const;

  /// Throws InvariantError if the geometry is malformed or leaves [0, n).
  void validate(int n) const;

  /// True for types whose kernel holds a single mirrored component.
  bool is_off_diagonal() const noexcept {
    return type == PatternType::OffDiagonalBlock || type == PatternType::Band;
  }

  friend bool operator==(const PatternDescriptor&, const PatternDescriptor&) = default;
};

/// Visits every kernel cell (one component for off-diagonal types).
void for_each_kernel_cell(const PatternDescriptor& p, const std::function<void(Cell)>& visit);

/// Visits every footprint cell including the mirrored component. Block and
/// Star cells are visited once; each off-diagonal cell and its mirror both.
void for_each_footprint_cell(const PatternDescriptor& p, const std::function<void(Cell)>& visit);

std::vector<Cell> kernel_cells(const PatternDescriptor& p);
std::vector<Cell> footprint_cells(const PatternDescriptor& p);

/// Row extent and column extent of the kernel's bounding box.
int row_extent(const PatternDescriptor& p) noexcept;
int col_extent(const PatternDescriptor& p) noexcept;

/// A pristine patterned matrix and the patterns that produced it.
struct Template {
  Matrix matrix;
  PatternType type = PatternType::Block;
  std::vector<PatternDescriptor> patterns;
  std::string template_id;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return matrix.size(); }
  MatrixKind kind() const noexcept { return matrix.kind(); }
};

}  // namespace patternbench
