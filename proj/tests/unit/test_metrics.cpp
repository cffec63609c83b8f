#include <doctest.h>

#include <cmath>
#include <vector>

#include "../oracles.hpp"
#include "patternbench/errors.hpp"
#include "patternbench/metrics.hpp"
#include "patternbench/template_gen.hpp"

namespace pb = patternbench;

namespace {

pb::Matrix path3() {
  pb::Matrix m(3, pb::MatrixKind::Binary);
  m.set(0, 1, 1.0f);
  m.set(1, 2, 1.0f);
  return m;
}

pb::DissimilarityMatrix random_dissimilarity(std::size_t n, pb::Rng& rng) {
  pb::DissimilarityMatrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, std::floor(pb::uniform_unit(rng) * 5.0));
  return d;
}

}  // namespace

TEST_CASE("metric names round trip") {
  for (pb::MetricId id : pb::kAllMetrics) CHECK(pb::parse_metric_id(pb::to_string(id)) == id);
  CHECK(pb::parse_metric_id("ar") == pb::MetricId::ARevents);
  CHECK_THROWS_AS(pb::parse_metric_id("nope"), pb::ConfigError);
}

TEST_CASE("measure_of_effectiveness - examples") {
  const std::vector<float> ones(4, 1.0f);
  CHECK(pb::measure_of_effectiveness(pb::Matrix::from_symmetric(2, pb::MatrixKind::Binary, ones)) == 4.0);
  CHECK(pb::measure_of_effectiveness(pb::Matrix(5, pb::MatrixKind::Binary)) == 0.0);
}

TEST_CASE("linear_arrangement - path examples and reversal invariance") {
  const auto m = path3();
  CHECK(pb::linear_arrangement(m) == 2.0);
  CHECK(pb::linear_arrangement(pb::permute(m, pb::Permutation({0, 2, 1}))) == 3.0);
  pb::Rng rng(3);
  pb::Matrix r(9, pb::MatrixKind::Binary);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = i + 1; j < 9; ++j)
      if (pb::uniform_unit(rng) < 0.3) r.set(i, j, 1.0f);
  const auto rev = pb::permute(r, pb::Permutation({8, 7, 6, 5, 4, 3, 2, 1, 0}));
  CHECK(pb::linear_arrangement(rev) == pb::linear_arrangement(r));
}

TEST_CASE("ar_events - anti-Robinson input has no events") {
  pb::DissimilarityMatrix d(6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) d.set(i, j, static_cast<double>(j - i));
  CHECK(pb::ar_events(d) == 0.0);
  CHECK(pb::ar_deviation(d) == 0.0);
  d.set(0, 5, 0.5);
  CHECK(pb::ar_events(d) > 0.0);
  CHECK(pb::ar_deviation(d) > 0.0);
}

TEST_CASE("ar_events - pristine single continuous block") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    pb::Rng rng(seed);
    const int u = static_cast<int>(pb::uniform_int(rng, 3, 12));
    const auto binary = pb::render_binary_template(std::vector{pb::PatternDescriptor::block(0, u)}, u);
    const auto t = pb::continuize_template(binary, rng);
    CHECK(pb::ar_events(pb::dissimilarity(t.matrix)) == 0.0);
  }
}

TEST_CASE("metrics - definitional oracles on random 6x6 inputs") {
  pb::Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    pb::Matrix m(6, trial % 2 ? pb::MatrixKind::Binary : pb::MatrixKind::Continuous);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i; j < 6; ++j) {
        const double v = pb::uniform_unit(rng);
        m.set(i, j, m.is_binary() ? (v < 0.5 ? 1.0f : 0.0f) : static_cast<float>(v));
      }
    if (m.is_binary()) {
      CHECK(pb::measure_of_effectiveness(m) == oracle::me(m));
    } else {
      CHECK(pb::measure_of_effectiveness(m) == doctest::Approx(oracle::me(m)).epsilon(1e-12));
    }
    CHECK(pb::linear_arrangement(m) == oracle::la(m));
    const auto d = random_dissimilarity(6, rng);
    CHECK(pb::ar_events(d) == oracle::ar_events(d));
    CHECK(pb::banded_anti_robinson(d, 2) == oracle::bar(d, 2));
    CHECK(pb::banded_anti_robinson(d) == oracle::bar(d, 2));  // ceil(6/5)
    std::vector<std::size_t> id{0, 1, 2, 3, 4, 5};
    CHECK(pb::linear_seriation(d) == doctest::Approx(oracle::linear_seriation(d, id)).epsilon(1e-12));
  }
}

TEST_CASE("morans_i - structure beats noise") {
  pb::Matrix blocks(20, pb::MatrixKind::Binary);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i; j < 10; ++j) blocks.set(i, j, 1.0f);
  pb::Matrix checker(20, pb::MatrixKind::Binary);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = i; j < 20; ++j)
      if ((i + j) % 2 == 0) checker.set(i, j, 1.0f);
  CHECK(pb::morans_i(blocks) > 0.5);
  CHECK(pb::morans_i(checker) == doctest::Approx(-1.0));
  CHECK(pb::morans_i(pb::Matrix(5, pb::MatrixKind::Binary)) == 0.0);
}

TEST_CASE("eval_metric - input type contract and orientation") {
  const auto m = path3();
  const auto d = pb::dissimilarity(m);
  CHECK(pb::eval_metric(pb::MetricId::LA, &m) == 2.0);
  CHECK_THROWS_AS(pb::eval_metric(pb::MetricId::LA, &d), pb::KindError);
  CHECK_THROWS_AS(pb::eval_metric(pb::MetricId::BAR, &m), pb::KindError);
  CHECK(pb::eval_metric_on(pb::MetricId::ARevents, m) == pb::ar_events(d));
  for (pb::MetricId id : pb::kAllMetrics) {
    const double raw = pb::eval_metric_on(id, m);
    CHECK(pb::oriented(id, raw) == (pb::higher_is_better(id) ? raw : -raw));
    CHECK(pb::consumes_matrix(id) == (id == pb::MetricId::ME || id == pb::MetricId::LA || id == pb::MetricId::MoranI));
  }
}
