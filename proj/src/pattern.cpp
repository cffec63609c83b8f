#include "patternbench/pattern.hpp"

#include <algorithm>

#include "patternbench/errors.hpp"

namespace patternbench {

std::string_view to_string(PatternType type) {
  switch (type) {
    case PatternType::Block: return "block";
    case PatternType::OffDiagonalBlock: return "offdiag";
    case PatternType::Star: return "star";
    case PatternType::Band: return "band";
  }
  return "unknown";
}

PatternType parse_pattern_type(std::string_view name) {
  if (name == "block") return PatternType::Block;
  if (name == "offdiag" || name == "off_diagonal_block" || name == "offdiagonal") {
    return PatternType::OffDiagonalBlock;
  }
  if (name == "star") return PatternType::Star;
  if (name == "band") return PatternType::Band;
  throw ConfigError("unknown pattern type '" + std::string(name) + "'");
}

PatternDescriptor PatternDescriptor::block(int lo, int hi) {
  PatternDescriptor p;
  p.type = PatternType::Block;
  p.rows = p.cols = Interval{lo, hi};
  return p;
}

PatternDescriptor PatternDescriptor::off_diagonal(Interval rows, Interval cols) {
  PatternDescriptor p;
  p.type = PatternType::OffDiagonalBlock;
  p.rows = rows;
  p.cols = cols;
  return p;
}

PatternDescriptor PatternDescriptor::star(Interval span, int center, int width) {
  PatternDescriptor p;
  p.type = PatternType::Star;
  p.rows = p.cols = span;
  p.center = center;
  p.width = width;
  return p;
}

PatternDescriptor PatternDescriptor::band(int row0, int col0, int length, int width) {
  PatternDescriptor p;
  p.type = PatternType::Band;
  p.rows = Interval{row0, row0 + length};
  p.cols = Interval{col0, col0 + length + width - 1};
  p.width = width;
  return p;
}

int PatternDescriptor::kernel_area() const noexcept {
  switch (type) {
    case PatternType::Block: return rows.length() * rows.length();
    case PatternType::OffDiagonalBlock: return rows.length() * cols.length();
    case PatternType::Star: {
      const int span = rows.length();
      return span * span - (span - width) * (span - width);
    }
    case PatternType::Band: return rows.length() * width;
  }
  return 0;
}

PatternDescriptor PatternDescriptor::translated(int dr, int dc) const {
  PatternDescriptor p = *this;
  p.rows = rows.shifted(dr);
  p.cols = cols.shifted(dc);
  if (type == PatternType::Star) p.center = center + dr;
  return p;
}

void PatternDescriptor::validate(int n) const {
  auto fail = [&](const std::string& why) {
    throw InvariantError(std::string(to_string(type)) + " pattern: " + why);
  };
  auto in_range = [n](Interval iv) { return iv.lo >= 0 && iv.hi <= n && iv.lo < iv.hi; };
  if (!in_range(rows) || !in_range(cols)) fail("extent outside the matrix or empty");
  switch (type) {
    case PatternType::Block:
      if (rows != cols) fail("rows and cols differ");
      break;
    case PatternType::OffDiagonalBlock:
      if (cols.lo < rows.hi) fail("rectangle touches the main diagonal");
      break;
    case PatternType::Star:
      if (rows != cols) fail("rows and cols differ");
      if (width < 1 || width > 4) fail("width must be in [1,4]");
      if (center < rows.lo || center + width > rows.hi) fail("center lines outside the span");
      break;
    case PatternType::Band:
      if (width < 1 || width > 4) fail("width must be in [1,4]");
      if (cols.lo <= rows.lo) fail("band must lie strictly above the diagonal");
      if (cols.length() != rows.length() + width - 1) fail("band column extent inconsistent");
      break;
  }
}

void for_each_kernel_cell(const PatternDescriptor& p, const std::function<void(Cell)>& visit) {
  switch (p.type) {
    case PatternType::Block:
    case PatternType::OffDiagonalBlock:
      for (int i = p.rows.lo; i < p.rows.hi; ++i) {
        for (int j = p.cols.lo; j < p.cols.hi; ++j) visit({i, j});
      }
      break;
    case PatternType::Star: {
      const Interval c{p.center, p.center + p.width};
      for (int i = p.rows.lo; i < p.rows.hi; ++i) {
        for (int j = p.cols.lo; j < p.cols.hi; ++j) {
          if (c.contains(i) || c.contains(j)) visit({i, j});
        }
      }
      break;
    }
    case PatternType::Band:
      for (int t = 0; t < p.rows.length(); ++t) {
        for (int k = 0; k < p.width; ++k) visit({p.rows.lo + t, p.cols.lo + t + k});
      }
      break;
  }
}

void for_each_footprint_cell(const PatternDescriptor& p, const std::function<void(Cell)>& visit) {
  for_each_kernel_cell(p, [&](Cell c) {
    visit(c);
    if (p.is_off_diagonal()) visit({c.col, c.row});
  });
}

std::vector<Cell> kernel_cells(const PatternDescriptor& p) {
  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(p.kernel_area()));
  for_each_kernel_cell(p, [&](Cell c) { out.push_back(c); });
  return out;
}

std::vector<Cell> footprint_cells(const PatternDescriptor& p) {
  std::vector<Cell> out;
  for_each_footprint_cell(p, [&](Cell c) { out.push_back(c); });
  return out;
}

int row_extent(const PatternDescriptor& p) noexcept { return p.rows.length(); }
int col_extent(const PatternDescriptor& p) noexcept { return p.cols.length(); }

}  // namespace patternbench
