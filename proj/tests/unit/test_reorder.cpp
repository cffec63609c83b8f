#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "../oracles.hpp"
#include "patternbench/errors.hpp"
#include "patternbench/metrics.hpp"
#include "patternbench/reorder.hpp"
#include "patternbench/template_gen.hpp"
#include "patternbench/variation_gen.hpp"

namespace pb = patternbench;

namespace {

pb::Permutation shuffled(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  pb::Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return pb::Permutation(order);
}

pb::Matrix two_clusters() {
  pb::Matrix m(10, pb::MatrixKind::Binary);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i; j < 10; ++j)
      if ((i < 5) == (j < 5)) m.set(i, j, 1.0f);
  return m;
}

pb::Matrix path(std::size_t n) {
  pb::Matrix m(n, pb::MatrixKind::Binary);
  for (std::size_t i = 0; i + 1 < n; ++i) m.set(i, i + 1, 1.0f);
  return m;
}

// True when the original labels {0..4} occupy consecutive positions.
bool clusters_contiguous(const pb::Permutation& shuffle, const pb::Permutation& order) {
  std::vector<int> label;
  for (std::size_t i = 0; i < order.size(); ++i) label.push_back(shuffle[order[i]] < 5 ? 0 : 1);
  int changes = 0;
  for (std::size_t i = 1; i < label.size(); ++i) changes += label[i] != label[i - 1];
  return changes == 1;
}

bool dendrogram_consistent(const pb::Dendrogram& tree, const pb::Permutation& order) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (std::size_t k = 0; k < tree.merges.size(); ++k) {
    const auto leaves = tree.leaf_order(tree.leaves + k);
    std::size_t lo = order.size(), hi = 0;
    for (auto l : leaves) {
      lo = std::min(lo, pos[l]);
      hi = std::max(hi, pos[l]);
    }
    if (hi - lo + 1 != leaves.size()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("registry - names parse and reject unknowns") {
  const auto names = pb::registered_algorithms();
  CHECK(names.size() == 12);
  for (const auto& name : names) CHECK(pb::AlgorithmSpec::parse(name).name() == name);
  CHECK_THROWS_AS(pb::AlgorithmSpec::parse("hc_ward_nope"), pb::ConfigError);
  CHECK_THROWS_AS(pb::AlgorithmSpec::parse("tsp"), pb::ConfigError);
}

TEST_CASE("reorder - every algorithm returns a deterministic bijection") {
  const auto t = pb::generate_template(pb::PatternType::Block, 30, pb::MatrixKind::Continuous, 2, "t");
  pb::Rng rng(1);
  const auto m = pb::apply_random_swaps(t.matrix, 32, rng).matrix;
  pb::Matrix one(1, pb::MatrixKind::Binary);
  for (const auto& name : pb::registered_algorithms()) {
    CAPTURE(name);
    const auto spec = pb::AlgorithmSpec::parse(name);
    const auto p = pb::reorder(m, spec, 7);
    CHECK(pb::Permutation::is_bijection(p.order()));
    CHECK(p.size() == 30);
    CHECK(pb::reorder(m, spec, 7) == p);
    CHECK_FALSE(pb::find_asymmetry(pb::permute(m, p).values(), 30));
    CHECK(pb::reorder(one, spec, 7) == pb::Permutation::identity(1));
  }
}

TEST_CASE("hierarchical_order - clusters contiguous, dendrogram consistent") {
  const auto base = two_clusters();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto q = shuffled(10, seed);
    const auto d = pb::dissimilarity(pb::permute(base, q));
    for (pb::Linkage link : {pb::Linkage::Single, pb::Linkage::Complete, pb::Linkage::Average, pb::Linkage::Ward}) {
      const auto tree = pb::agglomerate(d, link);
      CHECK(tree.merges.size() == 9);
      for (pb::LeafRule rule : {pb::LeafRule::Plain, pb::LeafRule::GW, pb::LeafRule::OLO}) {
        const auto p = pb::leaf_ordering(tree, d, rule);
        CHECK(clusters_contiguous(q, p));
        CHECK(dendrogram_consistent(tree, p));
      }
    }
  }
}

TEST_CASE("OLO - optimal over all orders for three leaves, never worse than plain") {
  pb::Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    pb::DissimilarityMatrix d(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) d.set(i, j, pb::uniform_unit(rng));
    const auto p = pb::hierarchical_order(d, pb::Linkage::Ward, pb::LeafRule::OLO);
    std::vector<std::size_t> order{0, 1, 2};
    double best = 1e300;
    do {
      best = std::min(best, pb::adjacent_dissimilarity(d, pb::Permutation(order)));
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(pb::adjacent_dissimilarity(d, p) == doctest::Approx(best).epsilon(1e-12));
  }
  for (int trial = 0; trial < 20; ++trial) {
    pb::DissimilarityMatrix d(12);
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = i + 1; j < 12; ++j) d.set(i, j, pb::uniform_unit(rng));
    const auto tree = pb::agglomerate(d, pb::Linkage::Average);
    const double olo = pb::adjacent_dissimilarity(d, pb::leaf_ordering(tree, d, pb::LeafRule::OLO));
    CHECK(olo <= pb::adjacent_dissimilarity(d, pb::leaf_ordering(tree, d, pb::LeafRule::Plain)) + 1e-12);
    CHECK(olo <= pb::adjacent_dissimilarity(d, pb::leaf_ordering(tree, d, pb::LeafRule::GW)) + 1e-12);
  }
}

TEST_CASE("fiedler_order - communities, paths and empty graphs") {
  const auto q = shuffled(10, 3);
  auto bridged = two_clusters();
  bridged.set(4, 5, 1.0f);
  const auto noisy = pb::permute(bridged, q);
  for (bool normalized : {false, true}) {
    CHECK(clusters_contiguous(q, pb::fiedler_order(noisy, normalized)));
    const auto pq = shuffled(15, 4);
    const auto order = pb::fiedler_order(pb::permute(path(15), pq), normalized);
    CHECK(pb::bandwidth(pb::permute(pb::permute(path(15), pq), order)) == 1);
  }
  CHECK(pb::fiedler_order(pb::Matrix(6, pb::MatrixKind::Binary)) == pb::Permutation::identity(6));
}

TEST_CASE("projection_order - PCA and MDS agree up to reversal") {
  pb::Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    pb::Matrix m(10, pb::MatrixKind::Continuous);
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t j = i; j < 10; ++j) m.set(i, j, static_cast<float>(pb::uniform_unit(rng)));
    const auto pca = pb::projection_order(m, pb::ProjectionMethod::PCA);
    const auto mds = pb::projection_order(m, pb::ProjectionMethod::MDS);
    auto reversed = mds.order();
    std::reverse(reversed.begin(), reversed.end());
    CHECK((pca == mds || pca.order() == reversed));
  }
  pb::Matrix equal(5, pb::MatrixKind::Binary);
  for (auto method : {pb::ProjectionMethod::PCA, pb::ProjectionMethod::MDS, pb::ProjectionMethod::LLE}) {
    CHECK(pb::projection_order(equal, method) == pb::Permutation::identity(5));
  }
}

TEST_CASE("heuristic_order - band recovery and moment fixed point") {
  const auto t = pb::render_binary_template(std::vector{pb::PatternDescriptor::band(0, 1, 29, 2)}, 32);
  const auto q = shuffled(32, 5);
  const auto shuffled_m = pb::permute(t.matrix, q);
  const auto p = pb::heuristic_order(shuffled_m, pb::HeuristicMethod::Barycenter);
  const auto bar = [](const pb::Matrix& m) { return pb::banded_anti_robinson(pb::dissimilarity(m)); };
  CHECK(bar(pb::permute(shuffled_m, p)) < bar(shuffled_m));

  CHECK(pb::heuristic_order(path(12), pb::HeuristicMethod::Moment) == pb::Permutation::identity(12));
  CHECK(pb::heuristic_order(shuffled_m, pb::HeuristicMethod::Barycenter, 1).size() == 32);
}

TEST_CASE("rcm_order - paths, empty graphs and bandwidth") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = pb::permute(path(40), shuffled(40, seed));
    CHECK(pb::bandwidth(pb::permute(m, pb::rcm_order(m))) == 1);
  }
  CHECK(pb::rcm_order(pb::Matrix(7, pb::MatrixKind::Binary)) == pb::Permutation::identity(7));
  pb::Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    pb::Matrix m(30, pb::MatrixKind::Binary);
    for (std::size_t i = 0; i < 30; ++i)
      for (std::size_t j = i + 1; j < std::min<std::size_t>(30, i + 4); ++j)
        if (pb::uniform_unit(rng) < 0.6) m.set(i, j, 1.0f);
    const auto s = pb::permute(m, shuffled(30, static_cast<std::uint64_t>(trial)));
    CHECK(pb::bandwidth(pb::permute(s, pb::rcm_order(s))) <= pb::bandwidth(s));
  }
}

TEST_CASE("rcm and moment - label permutation equivariance on tie-free inputs") {
  const auto m = pb::permute(path(12), shuffled(12, 9));
  const auto reference = pb::permute(m, pb::rcm_order(m));
  const auto q = shuffled(12, 10);
  const auto relabelled = pb::permute(m, q);
  const auto again = pb::permute(relabelled, pb::rcm_order(relabelled));
  const auto rev = pb::permute(again, pb::Permutation({11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0}));
  CHECK((again == reference || rev == reference));
}

TEST_CASE("arsa_order - toy optimality, degenerate input and best-seen contract") {
  pb::Rng rng(12);
  int hits = 0;
  for (int trial = 0; trial < 20; ++trial) {
    pb::DissimilarityMatrix d(5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) d.set(i, j, pb::uniform_unit(rng));
    const auto p = pb::arsa_order(d, {}, static_cast<std::uint64_t>(trial));
    const double got = pb::linear_seriation(pb::permute(d, p));
    if (std::abs(got - oracle::best_linear_seriation(d)) <= 1e-9) ++hits;
    CHECK(got <= pb::linear_seriation(d) + 1e-12);
  }
  CHECK(hits >= 18);
  CHECK(pb::arsa_order(pb::DissimilarityMatrix(6), {}, 1).size() == 6);
}
