#include "patternbench/template_gen.hpp"

#include <algorithm>
#include <cfloat>
#include <string>

#include "patternbench/errors.hpp"

namespace patternbench {

namespace {

// Grid of cells that new footprints may not touch: placed footprints dilated
// by one cell in all eight directions.
class Occupancy {
 public:
  explicit Occupancy(int n) : n_(n), blocked_(static_cast<std::size_t>(n) * n, 0) {}

  bool is_free(const PatternDescriptor& p) const {
    bool ok = true;
    for_each_footprint_cell(p, [&](Cell c) {
      if (ok && blocked_[index(c.row, c.col)]) ok = false;
    });
    return ok;
  }

  void place(const PatternDescriptor& p) {
    for_each_footprint_cell(p, [&](Cell c) {
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int r = c.row + dr;
          const int col = c.col + dc;
          if (r >= 0 && r < n_ && col >= 0 && col < n_) blocked_[index(r, col)] = 1;
        }
      }
    });
  }

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c);
  }

  int n_;
  std::vector<unsigned char> blocked_;
};

int shared_rows(const PatternDescriptor& a, const PatternDescriptor& b) {
  auto overlap = [](Interval x, Interval y) {
    return std::max(0, std::min(x.hi, y.hi) - std::max(x.lo, y.lo));
  };
  // The row set of an off-diagonal block is rows ∪ cols (the mirror adds cols).
  return overlap(a.rows, b.rows) + overlap(a.rows, b.cols) + overlap(a.cols, b.rows) +
         overlap(a.cols, b.cols);
}

bool shared_rows_ok(const PatternDescriptor& a, const PatternDescriptor& b) {
  const int shared = shared_rows(a, b);
  const int rows_a = a.rows.length() + a.cols.length();
  const int rows_b = b.rows.length() + b.cols.length();
  return 2 * shared <= rows_a && 2 * shared <= rows_b;
}

int cap_extent(int n, int count, int minimum) { return std::max(minimum, n / count); }

std::optional<PatternDescriptor> sample_pattern(PatternType type, int n, int count, Rng& rng,
                                                const TemplateOptions& opt) {
  switch (type) {
    case PatternType::Block: {
      const int hi = std::min(n, cap_extent(n, count, opt.min_block_side + 1) - 1);
      if (hi < opt.min_block_side) return std::nullopt;
      const int len = static_cast<int>(uniform_int(rng, opt.min_block_side, hi));
      const int lo = static_cast<int>(uniform_int(rng, 0, n - len));
      return PatternDescriptor::block(lo, lo + len);
    }
    case PatternType::OffDiagonalBlock: {
      const int hi = std::min(n / 2, cap_extent(n, 2 * count, opt.min_block_side));
      if (hi < opt.min_block_side) return std::nullopt;
      const int u = static_cast<int>(uniform_int(rng, opt.min_block_side, hi));
      const int v = static_cast<int>(uniform_int(rng, opt.min_block_side, hi));
      if (u + v > n) return std::nullopt;
      const int r0 = static_cast<int>(uniform_int(rng, 0, n - u - v));
      const int c0 = static_cast<int>(uniform_int(rng, r0 + u, n - v));
      return PatternDescriptor::off_diagonal({r0, r0 + u}, {c0, c0 + v});
    }
    case PatternType::Star: {
      const int hi = std::min(n, cap_extent(n, count, opt.min_line_span + 1) - 1);
      if (hi < opt.min_line_span) return std::nullopt;
      const int span = static_cast<int>(uniform_int(rng, opt.min_line_span, hi));
      const int width =
          static_cast<int>(uniform_int(rng, 1, std::min(opt.max_line_width, span - 1)));
      const int lo = static_cast<int>(uniform_int(rng, 0, n - span));
      const int center = static_cast<int>(uniform_int(rng, lo, lo + span - width));
      return PatternDescriptor::star({lo, lo + span}, center, width);
    }
    case PatternType::Band: {
      const int width = static_cast<int>(uniform_int(rng, 1, opt.max_line_width));
      const int hi = std::min(n - width, cap_extent(n, count, opt.min_line_span));
      if (hi < opt.min_line_span) return std::nullopt;
      const int len = static_cast<int>(uniform_int(rng, opt.min_line_span, hi));
      const int last_col0 = n - len - width + 1;
      const int r0 = static_cast<int>(uniform_int(rng, 0, last_col0 - 1));
      const int c0 = static_cast<int>(uniform_int(rng, r0 + 1, last_col0));
      return PatternDescriptor::band(r0, c0, len, width);
    }
  }
  return std::nullopt;
}

std::optional<std::vector<PatternDescriptor>> try_layout(PatternType type, int n, int count,
                                                         Rng& rng, const TemplateOptions& opt) {
  Occupancy occupancy(n);
  std::vector<PatternDescriptor> layout;
  layout.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < opt.placement_retries && !placed; ++attempt) {
      auto candidate = sample_pattern(type, n, count, rng, opt);
      if (!candidate || !occupancy.is_free(*candidate)) continue;
      if (type == PatternType::OffDiagonalBlock &&
          !std::all_of(layout.begin(), layout.end(),
                       [&](const PatternDescriptor& q) { return shared_rows_ok(*candidate, q); })) {
        continue;
      }
      occupancy.place(*candidate);
      layout.push_back(std::move(*candidate));
      placed = true;
    }
    if (!placed) return std::nullopt;
  }
  return layout;
}

}  // namespace

std::vector<PatternDescriptor> sample_layout(PatternType type, int n, Rng& rng,
                                             const TemplateOptions& options) {
  if (n < 4) throw PreconditionError("matrix size must be at least 4");
  const int count = static_cast<int>(uniform_int(rng, 1, options.max_patterns));
  for (int c = count; c >= 1; --c) {
    if (auto layout = try_layout(type, n, c, rng, options)) return std::move(*layout);
  }
  throw GenerationError("could not place a single " + std::string(to_string(type)) +
                        " pattern in a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
}

void check_layout(std::span<const PatternDescriptor> layout, int n) {
  if (layout.empty()) throw InvariantError("layout has no patterns");
  std::vector<int> owner(static_cast<std::size_t>(n) * n, -1);
  for (std::size_t k = 0; k < layout.size(); ++k) {
    const auto& p = layout[k];
    p.validate(n);
    if (p.type != layout.front().type) throw InvariantError("layout mixes pattern types");
    for_each_footprint_cell(p, [&](Cell c) {
      int& o = owner[static_cast<std::size_t>(c.row) * n + c.col];
      if (o != -1 && o != static_cast<int>(k)) {
        throw InvariantError("patterns " + std::to_string(o) + " and " + std::to_string(k) +
                             " overlap at (" + std::to_string(c.row) + "," +
                             std::to_string(c.col) + ")");
      }
      o = static_cast<int>(k);
    });
    if (p.type == PatternType::OffDiagonalBlock) {
      for (std::size_t q = 0; q < k; ++q) {
        if (!shared_rows_ok(p, layout[q])) {
          throw InvariantError("off-diagonal blocks " + std::to_string(q) + " and " +
                               std::to_string(k) + " share more than half of their rows");
        }
      }
    }
  }
}

Template render_binary_template(std::span<const PatternDescriptor> layout, int n) {
  check_layout(layout, n);
  Template t;
  t.matrix = Matrix(static_cast<std::size_t>(n), MatrixKind::Binary);
  t.type = layout.front().type;
  t.patterns.assign(layout.begin(), layout.end());
  for (const auto& p : layout) {
    for_each_kernel_cell(p, [&](Cell c) {
      t.matrix.set(static_cast<std::size_t>(c.row), static_cast<std::size_t>(c.col), 1.0f);
    });
  }
  return t;
}

RobinsonGrid robinson_grid(std::span<const double> ascending_anchors) {
  if (!std::is_sorted(ascending_anchors.begin(), ascending_anchors.end())) {
    throw PreconditionError("Robinson anchors must be ascending");
  }
  RobinsonGrid g;
  g.anchors.assign(ascending_anchors.begin(), ascending_anchors.end());
  const std::size_t u = g.anchors.size();
  g.values.resize(u * u);
  for (std::size_t i = 0; i < u; ++i) {
    for (std::size_t j = 0; j < u; ++j) {
      const double d = g.anchors[i] - g.anchors[j];
      g.values[i * u + j] = 1.0 - d * d;
    }
  }
  return g;
}

RobinsonGrid robinson_fill(int u, Rng& rng) {
  if (u < 1) throw PreconditionError("robinson_fill needs u >= 1");
  std::vector<double> anchors(static_cast<std::size_t>(u));
  for (double& x : anchors) x = uniform_unit(rng);
  std::sort(anchors.begin(), anchors.end());
  return robinson_grid(anchors);
}

namespace {

// Robinson values stay strictly positive so the support survives float32.
float fill_value(double v) {
  const float f = static_cast<float>(std::clamp(v, 0.0, 1.0));
  return f > 0.0f ? f : FLT_MIN;
}

}  // namespace

Template continuize_template(const Template& binary, Rng& rng, const TemplateOptions& options) {
  if (!binary.matrix.is_binary()) throw KindError("continuize_template needs a binary template");
  const auto n = binary.matrix.size();
  Template t = binary;
  t.matrix = Matrix(n, MatrixKind::Continuous);
  auto put = [&](int i, int j, double v) {
    t.matrix.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), fill_value(v));
  };

  for (auto& p : t.patterns) {
    switch (p.type) {
      case PatternType::Block:
      case PatternType::Star: {
        const auto grid = robinson_fill(p.rows.length(), rng);
        p.anchors = grid.anchors;
        for_each_kernel_cell(p, [&](Cell c) {
          put(c.row, c.col, grid(c.row - p.rows.lo, c.col - p.cols.lo));
        });
        break;
      }
      case PatternType::OffDiagonalBlock: {
        const int u = p.rows.length();
        const int v = p.cols.length();
        const auto grid = robinson_fill(std::max(u, v), rng);
        p.anchors = grid.anchors;
        // Top-left u x v window, rows flipped so the grid's diagonal runs along
        // the anti-diagonal through the corner nearest the main diagonal.
        for_each_kernel_cell(p, [&](Cell c) {
          const int a = c.row - p.rows.lo;
          const int b = c.col - p.cols.lo;
          put(c.row, c.col, grid(u - 1 - a, b));
        });
        break;
      }
      case PatternType::Band: {
        p.anchors.clear();
        const double lo = std::clamp(options.band_min_value, 0.0, 1.0);
        for_each_kernel_cell(p, [&](Cell c) {
          const double draw = 1.0 - uniform_unit(rng);  // (0, 1]
          put(c.row, c.col, lo + (1.0 - lo) * draw);
        });
        break;
      }
    }
  }
  return t;
}

Template generate_template(PatternType type, int n, MatrixKind kind, std::uint64_t seed,
                           std::string template_id, const TemplateOptions& options) {
  Rng rng(seed);
  const auto layout = sample_layout(type, n, rng, options);
  Template t = render_binary_template(layout, n);
  if (kind == MatrixKind::Continuous) t = continuize_template(t, rng, options);
  t.template_id = std::move(template_id);
  t.seed = seed;
  return t;
}

}  // namespace patternbench
