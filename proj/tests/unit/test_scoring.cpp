#include <doctest.h>

#include <cmath>
#include <vector>

#include "../oracles.hpp"
#include "patternbench/errors.hpp"
#include "patternbench/scoring.hpp"
#include "patternbench/template_gen.hpp"
#include "patternbench/variation_gen.hpp"

namespace pb = patternbench;

namespace {

pb::Matrix ones_at(std::size_t n, const std::vector<pb::Cell>& cells) {
  pb::Matrix m(n, pb::MatrixKind::Binary);
  for (const auto& c : cells) m.set(static_cast<std::size_t>(c.row), static_cast<std::size_t>(c.col), 1.0f);
  return m;
}

std::vector<pb::Cell> square(int lo, int side) { return pb::kernel_cells(pb::PatternDescriptor::block(lo, lo + side)); }

}  // namespace

TEST_CASE("derive_kernels - footprints and order") {
  const std::vector patterns{pb::PatternDescriptor::block(0, 6), pb::PatternDescriptor::block(10, 20)};
  const auto ks = pb::derive_kernels(patterns);
  REQUIRE(ks.size() == 2);
  CHECK(ks[0].area == 100);
  CHECK(ks[1].area == 36);
  CHECK(ks[0].source_index == 1);

  const std::vector band{pb::PatternDescriptor::band(0, 3, 20, 1)};
  CHECK(pb::derive_kernels(band)[0].area == 20);
  CHECK(pb::kernel_cells(band[0]).size() == 20);
}

TEST_CASE("match_pattern - pristine, translated and saturated") {
  const auto t = pb::render_binary_template(std::vector{pb::PatternDescriptor::block(5, 15)}, 30);
  const auto ks = pb::derive_kernels(t.patterns);
  pb::CellSet none(30);
  auto r = pb::match_pattern(t.matrix, ks[0], none);
  CHECK(r.found);
  CHECK(r.region == t.patterns[0]);
  CHECK(r.convolution == 100);

  const auto moved = pb::render_binary_template(std::vector{pb::PatternDescriptor::block(10, 20)}, 30);
  r = pb::match_pattern(moved.matrix, ks[0], none);
  CHECK(r.region.rows.lo == 10);
  CHECK(r.convolution == 100);

  // Ones on a checkerboard: no placement is full; the argmax still wins.
  pb::Matrix checker(12, pb::MatrixKind::Binary);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = i; j < 12; ++j)
      if ((i + j) % 2 == 0) checker.set(i, j, 1.0f);
  const std::vector big{pb::PatternDescriptor::block(0, 5)};
  r = pb::match_pattern(checker, pb::derive_kernels(big)[0], pb::CellSet(12));
  CHECK(r.convolution < 25);
  int best = 0;
  for (const auto& q : oracle::placements(big[0], 12)) {
    int c = 0;
    for (const auto& cell : pb::kernel_cells(q)) c += checker(cell.row, cell.col) > 0 ? 1 : 0;
    best = std::max(best, c);
  }
  CHECK(r.convolution == best);
}

TEST_CASE("existence_score - examples") {
  const auto region = square(0, 2);
  CHECK(pb::existence_score(ones_at(4, region), region) == 1.0);
  CHECK(pb::existence_score(ones_at(4, {{0, 0}, {1, 1}}), region) == 0.5);
  CHECK(pb::existence_score(pb::Matrix(4, pb::MatrixKind::Binary), region) == 0.0);
  CHECK_THROWS_AS(pb::existence_score(ones_at(4, region), std::vector<pb::Cell>{}), pb::PreconditionError);
}

TEST_CASE("disorder_score - examples") {
  const auto block3 = square(0, 3);
  CHECK(pb::disorder_score(ones_at(3, block3), block3) == 0.0);
  CHECK(pb::disorder_score(ones_at(3, {{0, 0}, {2, 2}}), block3) ==
        doctest::Approx(std::log(2.0) / std::log(9.0)).epsilon(1e-12));
  const auto block2 = square(0, 2);
  CHECK(pb::disorder_score(ones_at(2, {{0, 0}, {1, 1}}), block2) == 0.0);
  CHECK(pb::disorder_score(pb::Matrix(3, pb::MatrixKind::Binary), block3) == 0.0);
}

TEST_CASE("disorder_score - matches the union-find oracle") {
  pb::Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 16;
    pb::Matrix m(n, pb::MatrixKind::Binary);
    const double p = pb::uniform_unit(rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (pb::uniform_unit(rng) < p) m.set(i, j, 1.0f);
    const auto cells = square(static_cast<int>(pb::uniform_int(rng, 0, 6)), 10);
    CHECK(pb::disorder_score(m, cells) == oracle::disorder(m, cells));
  }
}

TEST_CASE("deviation_score - binary, Robinson and violating regions") {
  const auto t = pb::generate_template(pb::PatternType::Block, 30, pb::MatrixKind::Binary, 3, "t");
  for (const auto& p : t.patterns) CHECK(pb::deviation_score(t.matrix, p) == 0.0);

  pb::Rng rng(4);
  const auto grid = pb::robinson_fill(8, rng);
  pb::Matrix robinson(8, pb::MatrixKind::Continuous);
  for (int i = 0; i < 8; ++i)
    for (int j = i; j < 8; ++j)
      robinson.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<float>(grid(i, j)));
  CHECK(pb::deviation_score(robinson, pb::PatternDescriptor::block(0, 8)) == 0.0);

  // Row 1 reads (0.5, 1.0, 0.8); row 0 rises from 0.5 to 0.9 away from the diagonal.
  const std::vector<float> v{1.0f, 0.5f, 0.9f, 0.5f, 1.0f, 0.8f, 0.9f, 0.8f, 1.0f};
  const auto m = pb::Matrix::from_symmetric(3, pb::MatrixKind::Continuous, v);
  const auto block = pb::PatternDescriptor::block(0, 3);
  const double dev = pb::deviation_score(m, block);
  CHECK(dev > 0.0);
  CHECK(dev == oracle::deviation(m, block));
}

TEST_CASE("deviation_score - random regions against the triple oracle") {
  pb::Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 20;
    pb::Matrix m(n, pb::MatrixKind::Continuous);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (pb::uniform_unit(rng) < 0.8) m.set(i, j, static_cast<float>(pb::uniform_unit(rng)));
    const int lo = static_cast<int>(pb::uniform_int(rng, 0, 8));
    const auto block = pb::PatternDescriptor::block(lo, lo + static_cast<int>(pb::uniform_int(rng, 2, 12)));
    CHECK(pb::deviation_score(m, block) == oracle::deviation(m, block));
    const int u = static_cast<int>(pb::uniform_int(rng, 1, 5));
    const int w = static_cast<int>(pb::uniform_int(rng, 1, 5));
    const auto off = pb::PatternDescriptor::off_diagonal({0, u}, {10, 10 + w});
    CHECK(pb::deviation_score(m, off) == doctest::Approx(oracle::deviation(m, off)).epsilon(1e-12));
  }
}

TEST_CASE("region_score - examples") {
  CHECK(pb::region_score(1.0, 0.0, 0.0) == 1.0);
  CHECK(pb::region_score(0.9, 0.2, 0.1) == doctest::Approx(0.648).epsilon(1e-12));
  CHECK(pb::region_score(0.0, 0.7, 0.3) == 0.0);
}

TEST_CASE("score_matrix - zero matrix, single pattern and errors") {
  const auto t = pb::generate_template(pb::PatternType::Star, 40, pb::MatrixKind::Binary, 6, "t");
  CHECK(pb::score_matrix(pb::Matrix(40, pb::MatrixKind::Binary), t).final_score == 0.0);
  CHECK_THROWS_AS(pb::score_matrix(pb::Matrix(41, pb::MatrixKind::Binary), t), pb::DimensionError);
  CHECK_THROWS_AS(pb::score_matrix(pb::Matrix(40, pb::MatrixKind::Continuous), t), pb::KindError);

  const auto single = pb::render_binary_template(std::vector{pb::PatternDescriptor::block(3, 13)}, 20);
  pb::Rng rng(7);
  const auto noisy = pb::apply_noise_levels(single, 10, 5, 3, rng);
  const auto report = pb::score_matrix(noisy, single);
  REQUIRE(report.regions.size() == 1);
  CHECK(report.final_score == report.regions[0].score);
  for (const auto& r : report.regions) {
    CHECK((r.existence >= 0.0 && r.existence <= 1.0));
    CHECK((r.disorder >= 0.0 && r.disorder <= 1.0));
    CHECK((r.deviation >= 0.0 && r.deviation <= 1.0));
  }
}

TEST_CASE("score_matrix - translation invariance") {
  const auto a = pb::render_binary_template(std::vector{pb::PatternDescriptor::off_diagonal({2, 8}, {12, 16})}, 30);
  const auto b = pb::render_binary_template(std::vector{pb::PatternDescriptor::off_diagonal({5, 11}, {20, 24})}, 30);
  CHECK(pb::score_matrix(b.matrix, a).final_score == doctest::Approx(1.0).epsilon(1e-9));
  const auto s = pb::render_binary_template(std::vector{pb::PatternDescriptor::star({0, 9}, 4, 2)}, 30);
  const auto s2 = pb::render_binary_template(std::vector{pb::PatternDescriptor::star({14, 23}, 18, 2)}, 30);
  CHECK(pb::score_matrix(s2.matrix, s).final_score == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("score_matrix - heavy swaps lower the score") {
  int lower = 0;
  const int trials = 40;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    const auto t = pb::generate_template(pb::kAllPatternTypes[seed % 4], 60, pb::MatrixKind::Binary, seed, "t");
    pb::Rng rng(seed);
    const auto shuffled = pb::apply_random_swaps(t.matrix, pb::swap_ladder(60).back(), rng).matrix;
    if (pb::score_matrix(shuffled, t).final_score < 1.0) ++lower;
  }
  CHECK(lower >= trials * 95 / 100);
}

TEST_CASE("score_matrix - greedy reaches the joint maximum convolution") {
  pb::TemplateOptions topt;
  topt.max_patterns = 2;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    pb::Rng rng(pb::derive_seed(seed, "unit-greedy"));
    pb::Template t;
    try {
      t = pb::generate_template(pb::kAllPatternTypes[seed % 4], 12, pb::MatrixKind::Binary, rng(), "g", topt);
    } catch (const pb::GenerationError&) {
      continue;
    }
    const auto m = pb::apply_noise_levels(t, 8, 4, 2, rng);
    const auto report = pb::score_matrix(m, t);
    int total = 0;
    for (const auto& r : report.regions) total += r.convolution;
    auto pats = t.patterns;
    CHECK(total == oracle::max_joint_convolution(m, pats));
  }
}
