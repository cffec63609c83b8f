#include <doctest.h>

#include <vector>

#include "../oracles.hpp"
#include "patternbench/errors.hpp"
#include "patternbench/scoring.hpp"
#include "patternbench/template_gen.hpp"

namespace pb = patternbench;

TEST_CASE("sample_layout - counts, widths and determinism") {
  for (pb::PatternType type : pb::kAllPatternTypes) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      pb::Rng rng(seed);
      const auto layout = pb::sample_layout(type, 100, rng);
      CHECK(layout.size() >= 1);
      CHECK(layout.size() <= 15);
      CHECK_NOTHROW(pb::check_layout(layout, 100));
      for (const auto& p : layout) {
        CHECK(p.type == type);
        if (type == pb::PatternType::Star || type == pb::PatternType::Band) {
          CHECK(p.width >= 1);
          CHECK(p.width <= 4);
        }
      }
      pb::Rng again(seed);
      CHECK(pb::sample_layout(type, 100, again) == layout);
    }
  }
  pb::Rng rng(0);
  CHECK_THROWS_AS(pb::sample_layout(pb::PatternType::Block, 3, rng), pb::PreconditionError);
}

TEST_CASE("render_binary_template - single patterns") {
  const auto block = pb::render_binary_template(std::vector{pb::PatternDescriptor::block(10, 20)}, 30);
  for (std::size_t i = 0; i < 30; ++i) {
    for (std::size_t j = 0; j < 30; ++j) {
      const bool inside = i >= 10 && i < 20 && j >= 10 && j < 20;
      CHECK(block.matrix(i, j) == (inside ? 1.0f : 0.0f));
    }
  }

  const auto band = pb::render_binary_template(std::vector{pb::PatternDescriptor::band(2, 5, 10, 1)}, 20);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const bool on = std::abs(i - j) == 3 && std::min(i, j) >= 2 && std::min(i, j) < 12;
      CHECK(band.matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) == (on ? 1.0f : 0.0f));
    }
  }

  const auto star = pb::render_binary_template(std::vector{pb::PatternDescriptor::star({4, 12}, 7, 1)}, 16);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const bool in_span = i >= 4 && i < 12 && j >= 4 && j < 12;
      const bool on = in_span && (i == 7 || j == 7);
      CHECK(star.matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) == (on ? 1.0f : 0.0f));
    }
  }
}

TEST_CASE("render_binary_template - rejects overlapping layouts") {
  const std::vector layout{pb::PatternDescriptor::block(0, 10), pb::PatternDescriptor::block(5, 15)};
  CHECK_THROWS_AS(pb::render_binary_template(layout, 20), pb::InvariantError);
  const std::vector mixed{pb::PatternDescriptor::block(0, 4), pb::PatternDescriptor::star({6, 12}, 8, 1)};
  CHECK_THROWS_AS(pb::check_layout(mixed, 20), pb::InvariantError);
}

TEST_CASE("robinson_grid - examples") {
  const std::vector<double> flat{0.3, 0.3, 0.3};
  const auto g = pb::robinson_grid(flat);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(g(i, j) == 1.0);

  const std::vector<double> two{0.0, 0.5};
  const auto h = pb::robinson_grid(two);
  CHECK(h(0, 0) == 1.0);
  CHECK(h(0, 1) == 0.75);
  CHECK(h(1, 0) == 0.75);

  const std::vector<double> unsorted{0.5, 0.1};
  CHECK_THROWS_AS(pb::robinson_grid(unsorted), pb::PreconditionError);
}

TEST_CASE("continuize_template - support preserved and Robinson blocks") {
  for (pb::PatternType type : pb::kAllPatternTypes) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      pb::Rng rng(seed);
      const auto binary = pb::render_binary_template(pb::sample_layout(type, 60, rng), 60);
      const auto cont = pb::continuize_template(binary, rng);
      CHECK(cont.kind() == pb::MatrixKind::Continuous);
      CHECK(pb::binarize(cont.matrix) == binary.matrix);
      for (const auto& p : cont.patterns) {
        CHECK(oracle::deviation(cont.matrix, p) == 0.0);
      }
    }
  }
  pb::Rng rng(1);
  const auto t = pb::generate_template(pb::PatternType::Block, 30, pb::MatrixKind::Continuous, 5, "t");
  CHECK_THROWS_AS(pb::continuize_template(t, rng), pb::KindError);
}

TEST_CASE("generate_template - pristine templates score 1") {
  for (pb::PatternType type : pb::kAllPatternTypes) {
    for (pb::MatrixKind kind : {pb::MatrixKind::Binary, pb::MatrixKind::Continuous}) {
      for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto t = pb::generate_template(type, 64, kind, seed, "t");
        CHECK(pb::score_matrix(t.matrix, t).final_score == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(pb::generate_template(type, 64, kind, seed, "t").matrix == t.matrix);
      }
    }
  }
}
