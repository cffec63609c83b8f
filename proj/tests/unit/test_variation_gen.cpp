#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "patternbench/errors.hpp"
#include "patternbench/scoring.hpp"
#include "patternbench/template_gen.hpp"
#include "patternbench/variation_gen.hpp"

namespace pb = patternbench;

TEST_CASE("noise_levels_schedule - 0 through 16") {
  const auto s = pb::noise_levels_schedule();
  REQUIRE(s.size() == 17);
  for (int i = 0; i <= 16; ++i) CHECK(s[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("balanced_levels - every level within one of the uniform share") {
  pb::Rng rng(3);
  for (std::size_t count : {1u, 16u, 17u, 70u, 1000u}) {
    const auto levels = pb::balanced_levels(count, rng);
    REQUIRE(levels.size() == count);
    std::map<int, std::size_t> hist;
    for (int l : levels) ++hist[l];
    for (const auto& [level, c] : hist) {
      CHECK(level >= 0);
      CHECK(level <= 16);
      CHECK(c >= count / 17);
      CHECK(c <= count / 17 + 1);
    }
  }
}

TEST_CASE("gen_noise_antipattern - level 0, symmetry and counts") {
  pb::Rng rng(1);
  CHECK(pb::gen_noise_antipattern(50, 0, rng).count() == 0);
  for (int level : {1, 4, 8, 16}) {
    for (std::size_t n : {20u, 100u}) {
      const auto mask = pb::gen_noise_antipattern(n, level, rng);
      CHECK(mask.is_symmetric());
      const double target = level * static_cast<double>(n * n) / 100.0;
      CHECK(std::abs(static_cast<double>(mask.count()) - target) <= 2.0);
    }
  }
  CHECK_THROWS_AS(pb::gen_noise_antipattern(10, 17, rng), pb::PreconditionError);
}

TEST_CASE("gen_noise_cluster_antipattern - structure") {
  pb::Rng rng(2);
  CHECK(pb::gen_noise_cluster_antipattern(40, 0, 3, rng).count() == 0);
  const auto mask = pb::gen_noise_cluster_antipattern(60, 16, 4, rng);
  CHECK(mask.is_symmetric());
  CHECK(mask.count() > 0);

  // With one vector every row copies the same column set C before the OR,
  // so each row's ones are C plus, for rows in C, every column.
  const std::size_t n = 13;
  const auto one = pb::gen_noise_cluster_antipattern(n, 16, 1, rng);
  std::set<std::size_t> cols;
  for (std::size_t j = 0; j < n; ++j) {
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) all = all && one(i, j);
    if (all) cols.insert(j);
  }
  CHECK(cols.size() == 16 * n / 100);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(one(i, j) == (cols.count(j) > 0 || cols.count(i) > 0));
    }
  }
  CHECK_THROWS_AS(pb::gen_noise_cluster_antipattern(10, 4, 0, rng), pb::PreconditionError);
}

TEST_CASE("default_cluster_set_size - examples") {
  CHECK(pb::default_cluster_set_size({pb::PatternDescriptor::block(0, 20)}) == 20);
  CHECK(pb::default_cluster_set_size({pb::PatternDescriptor::block(0, 10), pb::PatternDescriptor::block(20, 50)}) ==
        20);
  CHECK_THROWS_AS(pb::default_cluster_set_size({}), pb::PreconditionError);
}

TEST_CASE("apply_noise - empty and full masks") {
  const auto t = pb::generate_template(pb::PatternType::Block, 30, pb::MatrixKind::Binary, 4, "t");
  pb::Rng rng(5);
  pb::NoiseMask empty{30, std::vector<unsigned char>(900, 0)};
  CHECK(pb::apply_noise(t.matrix, empty, rng) == t.matrix);
  pb::NoiseMask full{30, std::vector<unsigned char>(900, 1)};
  const auto flipped = pb::apply_noise(t.matrix, full, rng);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) CHECK(flipped(i, j) == 1.0f - t.matrix(i, j));

  const auto c = pb::generate_template(pb::PatternType::Block, 30, pb::MatrixKind::Continuous, 4, "t");
  const auto changed = pb::apply_noise(c.matrix, full, rng);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j) CHECK(changed(i, j) != c.matrix(i, j));
  CHECK(pb::apply_noise_levels(c, 0, 0, 3, rng) == c.matrix);
  pb::NoiseMask small{5, std::vector<unsigned char>(25, 0)};
  CHECK_THROWS_AS(pb::apply_noise(c.matrix, small, rng), pb::DimensionError);
}

TEST_CASE("apply_random_swaps - returns the applied permutation") {
  const auto t = pb::generate_template(pb::PatternType::Star, 40, pb::MatrixKind::Continuous, 8, "t");
  pb::Rng rng(6);
  CHECK(pb::apply_random_swaps(t.matrix, 0, rng).matrix == t.matrix);
  const auto r = pb::apply_random_swaps(t.matrix, 64, rng);
  CHECK(r.matrix == pb::permute(t.matrix, r.permutation));
}

TEST_CASE("swap_ladder - examples") {
  const auto l100 = pb::swap_ladder(100);
  CHECK(l100.front() == 0);
  CHECK(l100.back() == 256);
  CHECK(l100.size() == 10);
  CHECK(pb::swap_ladder(400).back() == 1024);
  for (std::size_t k = 2; k < l100.size(); ++k) CHECK(l100[k] == 2 * l100[k - 1]);
  pb::SwapLadderOptions base2;
  base2.log_base = 2.0;
  CHECK(pb::swap_ladder(100, base2).back() == 256);  // 332.2 is closer to 256 than to 512
  CHECK_THROWS_AS(pb::swap_ladder(1), pb::PreconditionError);
}

TEST_CASE("gen_variations - counts, provenance and determinism") {
  const auto t = pb::generate_template(pb::PatternType::Block, 24, pb::MatrixKind::Binary, 11, "tpl");
  pb::VariationOptions opt;
  opt.variations_per_template = 5;
  const auto records = pb::gen_variations(t, 99, opt);
  const auto ladder = pb::swap_ladder(24);
  REQUIRE(records.size() == 5 * ladder.size());
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    CHECK(r.template_id == "tpl");
    CHECK(r.swap_count == ladder[k % ladder.size()]);
    CHECK(r.matrix.kind() == t.kind());
    CHECK_FALSE(pb::find_asymmetry(r.matrix.values(), 24));
    const auto& sibling = records[k - k % ladder.size()];
    CHECK(r.ground_truth_score == sibling.score);
    CHECK(r.noise_level == sibling.noise_level);
    CHECK(r.score == pb::score_matrix(r.matrix, t).final_score);
  }
  const auto again = pb::gen_variations(t, 99, opt);
  for (std::size_t k = 0; k < records.size(); ++k) CHECK(again[k].matrix == records[k].matrix);
  opt.variations_per_template = 0;
  CHECK_THROWS_AS(pb::gen_variations(t, 99, opt), pb::ConfigError);
}

TEST_CASE("degradation - mean score falls with noise") {
  pb::VariationOptions opt;
  opt.variations_per_template = 1;
  std::vector<double> means;
  for (int level : {0, 8, 16}) {
    double sum = 0.0;
    int count = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto t = pb::generate_template(pb::PatternType::Block, 40, pb::MatrixKind::Binary, seed, "t");
      pb::Rng rng(seed + 1000);
      sum += pb::score_matrix(pb::apply_noise_levels(t, level, 0, 3, rng), t).final_score;
      ++count;
    }
    means.push_back(sum / count);
  }
  CHECK(means[0] == doctest::Approx(1.0));
  CHECK(means[1] < means[0]);
  CHECK(means[2] < means[1]);
}
