#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "patternbench/pattern.hpp"
#include "patternbench/random.hpp"

namespace patternbench {

inline constexpr int kMaxNoiseLevel = 16;
inline constexpr int kDefaultVariationsPerTemplate = 70;

/// Symmetric 0/1 mask, n*n row-major.
struct NoiseMask {
  std::size_t n = 0;
  std::vector<unsigned char> cells;

  bool operator()(std::size_t i, std::size_t j) const noexcept { return cells[i * n + j] != 0; }
  std::size_t count() const noexcept;
  bool is_symmetric() const noexcept;
};

/// The uniform noise levels 0..16 (percent).
std::vector<int> noise_levels_schedule();

/// `count` levels from the schedule, each marginally uniform: consecutive
/// shuffled passes over all 17 levels, truncated to `count` and shuffled
/// again, so every level appears floor(count/17) or ceil(count/17) times.
std::vector<int> balanced_levels(std::size_t count, Rng& rng);

/// Uniform noise: upper-triangle cells (diagonal included) chosen without
/// replacement until the mirrored ones-count reaches round(level% * n^2),
/// skipping off-diagonal picks that would overshoot it.
NoiseMask gen_noise_antipattern(std::size_t n, int level, Rng& rng);

/// Noise clusters: set_size vectors with floor(level*n/100) ones each; every
/// row copies one vector; the result is OR-ed with its transpose.
NoiseMask gen_noise_cluster_antipattern(std::size_t n, int level, int set_size, Rng& rng);

/// round(mean over patterns of (row extent + col extent) / 2), at least 1.
int default_cluster_set_size(const std::vector<PatternDescriptor>& patterns);

/// Binary: flips masked entries. Continuous: replaces each masked pair by a
/// uniform draw on [0,1) that differs from the original value.
Matrix apply_noise(const Matrix& m, const NoiseMask& mask, Rng& rng);

/// Applies `count` random transpositions (distinct unordered pairs, drawn
/// with replacement). Returns the accumulated permutation alongside.
struct SwapResult {
  Matrix matrix;
  Permutation permutation;
};
SwapResult apply_random_swaps(const Matrix& m, std::size_t count, Rng& rng);

struct SwapLadderOptions {
  /// Base of the logarithm in (1/2) n log n. Natural log by default.
  double log_base = 0.0;  // 0 means e
};

/// 0 followed by 1, 2, 4, ..., 2^K with 2^K the power of two closest to
/// (1/2) n log n (ties go to the larger power).
std::vector<std::size_t> swap_ladder(std::size_t n, const SwapLadderOptions& options = {});

struct VariationRecord {
  Matrix matrix;
  std::string template_id;
  int draw_index = 0;
  int noise_level = 0;
  int cluster_noise_level = 0;
  std::size_t swap_count = 0;
  std::uint64_t seed = 0;
  double score = 0.0;
  double ground_truth_score = 0.0;
};

struct VariationOptions {
  int variations_per_template = kDefaultVariationsPerTemplate;
  /// 0 selects default_cluster_set_size(template).
  int cluster_set_size = 0;
  SwapLadderOptions ladder;
  /// Compute scores (and ground-truth scores) for every record.
  bool score = true;
};

/// One noise draw: the noisy matrix before any swap.
struct NoiseDraw {
  int noise_level = 0;
  int cluster_noise_level = 0;
  Matrix matrix;
};

/// Draws two independent levels from the schedule and applies uniform noise
/// followed by noise clusters.
NoiseDraw draw_noise(const Template& t, int cluster_set_size, Rng& rng);

/// Applies the given levels directly (used by experiments with fixed levels).
Matrix apply_noise_levels(const Template& t, int noise_level, int cluster_noise_level,
                          int cluster_set_size, Rng& rng);

/// variations_per_template noise draws, each expanded over the swap ladder.
/// The two level sequences come from balanced_levels (independent streams).
/// Record order: draw-major, ladder-minor. Each draw's masks come from
/// derive_seed(seed, {draw}) and each record's swaps from
/// derive_seed(seed, {draw, ladder index}).
std::vector<VariationRecord> gen_variations(const Template& t, std::uint64_t seed,
                                            const VariationOptions& options = {});

/// Same records in the same order, handed over one at a time.
void for_each_variation(const Template& t, std::uint64_t seed, const VariationOptions& options,
                        const std::function<void(VariationRecord&&)>& sink);

}  // namespace patternbench
