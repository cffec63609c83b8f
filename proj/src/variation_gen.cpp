#include "patternbench/variation_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "patternbench/errors.hpp"
#include "patternbench/scoring.hpp"

namespace patternbench {

std::size_t NoiseMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), 1));
}

bool NoiseMask::is_symmetric() const noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cells[i * n + j] != cells[j * n + i]) return false;
    }
  }
  return true;
}

std::vector<int> noise_levels_schedule() {
  std::vector<int> levels(kMaxNoiseLevel + 1);
  std::iota(levels.begin(), levels.end(), 0);
  return levels;
}

std::vector<int> balanced_levels(std::size_t count, Rng& rng) {
  const auto schedule = noise_levels_schedule();
  std::vector<int> levels;
  levels.reserve(count + schedule.size());
  while (levels.size() < count) {
    std::vector<int> pass = schedule;
    std::shuffle(pass.begin(), pass.end(), rng);
    levels.insert(levels.end(), pass.begin(), pass.end());
  }
  levels.resize(count);
  std::shuffle(levels.begin(), levels.end(), rng);
  return levels;
}

namespace {

void check_level(int level) {
  if (level < 0 || level > kMaxNoiseLevel) {
    throw PreconditionError("noise level " + std::to_string(level) + "% outside [0," +
                            std::to_string(kMaxNoiseLevel) + "]");
  }
}

}  // namespace

NoiseMask gen_noise_antipattern(std::size_t n, int level, Rng& rng) {
  check_level(level);
  NoiseMask mask{n, std::vector<unsigned char>(n * n, 0)};
  const auto target = static_cast<std::size_t>(
      std::llround(static_cast<double>(level) * static_cast<double>(n * n) / 100.0));
  if (target == 0) return mask;

  // Upper-triangle cells (diagonal included), visited in lazily shuffled order.
  std::vector<std::size_t> cells;
  cells.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) cells.push_back(i * n + j);
  }
  std::size_t ones = 0;
  for (std::size_t k = 0; k < cells.size() && ones < target; ++k) {
    const auto pick = static_cast<std::size_t>(
        uniform_int(rng, static_cast<std::int64_t>(k), static_cast<std::int64_t>(cells.size() - 1)));
    std::swap(cells[k], cells[pick]);
    const std::size_t i = cells[k] / n;
    const std::size_t j = cells[k] % n;
    const std::size_t gain = i == j ? 1 : 2;
    if (ones + gain > target) continue;
    mask.cells[i * n + j] = 1;
    mask.cells[j * n + i] = 1;
    ones += gain;
  }
  return mask;
}

NoiseMask gen_noise_cluster_antipattern(std::size_t n, int level, int set_size, Rng& rng) {
  check_level(level);
  if (set_size < 1) throw PreconditionError("noise-cluster set size must be >= 1");
  NoiseMask mask{n, std::vector<unsigned char>(n * n, 0)};
  const auto per_vector = static_cast<std::size_t>(level) * n / 100;
  if (per_vector == 0) return mask;

  std::vector<std::vector<std::size_t>> vectors(static_cast<std::size_t>(set_size));
  std::vector<std::size_t> positions(n);
  for (auto& vec : vectors) {
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    for (std::size_t k = 0; k < per_vector; ++k) {
      const auto pick = static_cast<std::size_t>(
          uniform_int(rng, static_cast<std::int64_t>(k), static_cast<std::int64_t>(n - 1)));
      std::swap(positions[k], positions[pick]);
    }
    vec.assign(positions.begin(), positions.begin() + static_cast<std::ptrdiff_t>(per_vector));
  }
  for (std::size_t row = 0; row < n; ++row) {
    const auto which = static_cast<std::size_t>(uniform_int(rng, 0, set_size - 1));
    for (std::size_t col : vectors[which]) {
      mask.cells[row * n + col] = 1;
      mask.cells[col * n + row] = 1;  // OR with the transpose
    }
  }
  return mask;
}

int default_cluster_set_size(const std::vector<PatternDescriptor>& patterns) {
  if (patterns.empty()) throw PreconditionError("template has no patterns");
  double sum = 0.0;
  for (const auto& p : patterns) sum += 0.5 * (row_extent(p) + col_extent(p));
  return std::max(1, static_cast<int>(std::lround(sum / static_cast<double>(patterns.size()))));
}

Matrix apply_noise(const Matrix& m, const NoiseMask& mask, Rng& rng) {
  const std::size_t n = m.size();
  if (mask.n != n) throw DimensionError("noise mask size differs from matrix size");
  Matrix out = m;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (!mask(i, j)) continue;
      const float original = m(i, j);
      if (m.is_binary()) {
        out.set(i, j, original > 0.0f ? 0.0f : 1.0f);
      } else {
        float replacement = original;
        while (replacement == original) replacement = static_cast<float>(uniform_unit(rng));
        out.set(i, j, replacement);
      }
    }
  }
  return out;
}

SwapResult apply_random_swaps(const Matrix& m, std::size_t count, Rng& rng) {
  const std::size_t n = m.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (n >= 2) {
    for (std::size_t s = 0; s < count; ++s) {
      const auto i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
      auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 2));
      if (j >= i) ++j;
      std::swap(order[i], order[j]);
    }
  }
  Permutation p(std::move(order));
  return SwapResult{permute(m, p), p};
}

std::vector<std::size_t> swap_ladder(std::size_t n, const SwapLadderOptions& options) {
  if (n < 2) throw PreconditionError("swap_ladder needs n >= 2");
  double log_n = std::log(static_cast<double>(n));
  if (options.log_base > 0.0) {
    if (options.log_base == 1.0) throw ConfigError("log base must differ from 1");
    log_n /= std::log(options.log_base);
  }
  const double bound = 0.5 * static_cast<double>(n) * log_n;
  int best_k = 0;
  double best_gap = std::abs(1.0 - bound);
  for (int k = 1; k < 62; ++k) {
    const double power = std::ldexp(1.0, k);
    const double gap = std::abs(power - bound);
    if (gap <= best_gap) {
      best_gap = gap;
      best_k = k;
    }
    if (power > 2.0 * bound) break;
  }
  std::vector<std::size_t> ladder{0};
  for (int k = 0; k <= best_k; ++k) ladder.push_back(std::size_t{1} << k);
  return ladder;
}

Matrix apply_noise_levels(const Template& t, int noise_level, int cluster_noise_level,
                          int cluster_set_size, Rng& rng) {
  const std::size_t n = t.size();
  const NoiseMask uniform = gen_noise_antipattern(n, noise_level, rng);
  const NoiseMask clusters = gen_noise_cluster_antipattern(n, cluster_noise_level, cluster_set_size, rng);
  const Matrix noisy = apply_noise(t.matrix, uniform, rng);
  return apply_noise(noisy, clusters, rng);
}

NoiseDraw draw_noise(const Template& t, int cluster_set_size, Rng& rng) {
  NoiseDraw draw;
  draw.noise_level = static_cast<int>(uniform_int(rng, 0, kMaxNoiseLevel));
  draw.cluster_noise_level = static_cast<int>(uniform_int(rng, 0, kMaxNoiseLevel));
  draw.matrix = apply_noise_levels(t, draw.noise_level, draw.cluster_noise_level, cluster_set_size, rng);
  return draw;
}

void for_each_variation(const Template& t, std::uint64_t seed, const VariationOptions& options,
                        const std::function<void(VariationRecord&&)>& sink) {
  if (options.variations_per_template < 1) {
    throw ConfigError("variations_per_template must be positive");
  }
  const int set_size = options.cluster_set_size > 0 ? options.cluster_set_size
                                                    : default_cluster_set_size(t.patterns);
  const auto ladder = swap_ladder(t.size(), options.ladder);

  const auto draws = static_cast<std::size_t>(options.variations_per_template);
  Rng noise_levels_rng(derive_seed(seed, "noise-levels"));
  Rng cluster_levels_rng(derive_seed(seed, "cluster-noise-levels"));
  const auto noise_levels = balanced_levels(draws, noise_levels_rng);
  const auto cluster_levels = balanced_levels(draws, cluster_levels_rng);

  for (int d = 0; d < options.variations_per_template; ++d) {
    Rng noise_rng(derive_seed(seed, {static_cast<std::uint64_t>(d)}));
    NoiseDraw draw;
    draw.noise_level = noise_levels[static_cast<std::size_t>(d)];
    draw.cluster_noise_level = cluster_levels[static_cast<std::size_t>(d)];
    draw.matrix = apply_noise_levels(t, draw.noise_level, draw.cluster_noise_level, set_size, noise_rng);
    double ground_truth = 0.0;
    for (std::size_t li = 0; li < ladder.size(); ++li) {
      VariationRecord r;
      r.template_id = t.template_id;
      r.draw_index = d;
      r.noise_level = draw.noise_level;
      r.cluster_noise_level = draw.cluster_noise_level;
      r.swap_count = ladder[li];
      r.seed = derive_seed(seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(li)});
      Rng swap_rng(r.seed);
      r.matrix = apply_random_swaps(draw.matrix, r.swap_count, swap_rng).matrix;
      if (options.score) {
        r.score = score_matrix(r.matrix, t).final_score;
        if (r.swap_count == 0) ground_truth = r.score;
        r.ground_truth_score = ground_truth;
      }
      sink(std::move(r));
    }
  }
}

std::vector<VariationRecord> gen_variations(const Template& t, std::uint64_t seed,
                                            const VariationOptions& options) {
  std::vector<VariationRecord> records;
  for_each_variation(t, seed, options, [&](VariationRecord&& r) { records.push_back(std::move(r)); });
  return records;
}

}  // namespace patternbench
