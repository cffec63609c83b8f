#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "patternbench/pattern.hpp"
#include "patternbench/random.hpp"

namespace patternbench {

struct TemplateOptions {
  int max_patterns = 15;
  /// Placement attempts per pattern before the pattern count is reduced.
  int placement_retries = 1000;
  int max_line_width = 4;
  int min_block_side = 2;
  int min_line_span = 5;
  /// Lower bound for continuous band values; 0 means the open interval (0,1].
  double band_min_value = 0.0;
};

/// Samples 1..max_patterns non-overlapping patterns of one type. Deterministic
/// given the rng state. Throws GenerationError if not even one pattern fits.
std::vector<PatternDescriptor> sample_layout(PatternType type, int n, Rng& rng,
                                             const TemplateOptions& options = {});

/// Throws InvariantError when patterns overlap, leave the matrix, mix types,
/// or two off-diagonal blocks share more than half of either one's rows.
void check_layout(std::span<const PatternDescriptor> layout, int n);

/// Binary matrix with ones exactly on the pattern footprints.
Template render_binary_template(std::span<const PatternDescriptor> layout, int n);

/// Robinson grid 1 - (x_i - x_j)^2 over ascending anchors.
struct RobinsonGrid {
  std::vector<double> anchors;
  std::vector<double> values;  // u*u row-major

  int size() const noexcept { return static_cast<int>(anchors.size()); }
  double operator()(int i, int j) const noexcept {
    return values[static_cast<std::size_t>(i) * anchors.size() + static_cast<std::size_t>(j)];
  }
};

RobinsonGrid robinson_grid(std::span<const double> ascending_anchors);

/// Samples u sorted uniform anchors on [0,1] and builds their grid.
RobinsonGrid robinson_fill(int u, Rng& rng);

/// Replaces a binary template's ones with Robinson-structured values (Block,
/// Star, cropped-and-mirrored for OffDiagonalBlock) and uniform values for
/// Band. The support is unchanged.
Template continuize_template(const Template& binary, Rng& rng, const TemplateOptions& options = {});

/// Full pipeline for one template: layout, binary rendering, and (for
/// continuous kind) continuization, all from one seeded stream.
Template generate_template(PatternType type, int n, MatrixKind kind, std::uint64_t seed,
                           std::string template_id, const TemplateOptions& options = {});

}  // namespace patternbench
