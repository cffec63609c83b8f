#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patternbench/matrix.hpp"

namespace patternbench {

enum class AlgorithmFamily { Hierarchical, Spectral, Projection, Heuristic, Graph, Annealing };
enum class Linkage { Single, Complete, Average, Ward };
enum class LeafRule { Plain, GW, OLO };
enum class ProjectionMethod { PCA, MDS, LLE };
enum class HeuristicMethod { Barycenter, Moment };

std::string_view to_string(AlgorithmFamily f);
std::string_view to_string(Linkage l);
std::string_view to_string(LeafRule r);
Linkage parse_linkage(std::string_view name);
LeafRule parse_leaf_rule(std::string_view name);

/// An algorithm selection. `variant` is family-specific: "ward_olo" for
/// hierarchical, "norm"/"" for spectral, "pca"/"mds"/"lle", "barycenter"/
/// "moment", "rcm", "arsa". Numeric params by key (k, iterations,
/// initial_temperature, cooling, max_iterations).
struct AlgorithmSpec {
  AlgorithmFamily family = AlgorithmFamily::Heuristic;
  std::string variant;
  std::map<std::string, double> params;

  /// Registry name, e.g. "hc_ward_olo", "spectral_norm", "arsa".
  std::string name() const;
  /// Parses a registry name; throws ConfigError for unknown names.
  static AlgorithmSpec parse(std::string_view name);
  double param(const std::string& key, double fallback) const;
};

/// The registry names exposed by the CLI.
std::vector<std::string> registered_algorithms();

/// Agglomerative clustering result. Leaves are 0..n-1, merge k creates node
/// n+k joining `left` and `right`.
struct Dendrogram {
  struct Merge {
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;
    std::size_t size = 0;
  };
  std::size_t leaves = 0;
  std::vector<Merge> merges;

  std::size_t root() const noexcept { return leaves + merges.size() - 1; }
  bool is_leaf(std::size_t node) const noexcept { return node < leaves; }
  /// Leaves below a node in construction (left-then-right) order.
  std::vector<std::size_t> leaf_order(std::size_t node) const;
};

/// Lance-Williams agglomeration. Ties go to the lexicographically smallest
/// pair of active cluster slots.
Dendrogram agglomerate(const DissimilarityMatrix& d, Linkage linkage);

/// GW: at each merge, one of four subtree orientations minimizing the
/// dissimilarity of the two leaves that become adjacent. OLO: optimal leaf
/// ordering (minimum sum of adjacent-leaf dissimilarities) by dynamic
/// programming over the dendrogram.
Permutation leaf_ordering(const Dendrogram& tree, const DissimilarityMatrix& d, LeafRule rule);
Permutation hierarchical_order(const DissimilarityMatrix& d, Linkage linkage, LeafRule rule);

/// Sum of dissimilarities between consecutive elements of the order.
double adjacent_dissimilarity(const DissimilarityMatrix& d, const Permutation& p);

Permutation fiedler_order(const Matrix& m, bool normalized = false);
Permutation projection_order(const Matrix& m, ProjectionMethod method, int lle_neighbors = 10);
Permutation heuristic_order(const Matrix& m, HeuristicMethod method, int max_iterations = 100);
/// Reverse Cuthill-McKee per connected component: BFS from a minimum-degree
/// vertex, neighbours by (degree, index), each component reversed in place.
Permutation rcm_order(const Matrix& m);

struct ArsaParams {
  /// Unset: calibrated so about half of the uphill moves are accepted.
  std::optional<double> initial_temperature;
  double cooling = 0.95;
  /// Unset: 100 * n^2 proposals.
  std::optional<std::size_t> iterations;
};

/// Simulated annealing minimizing linear_seriation(permute(d, p)); returns
/// the best order seen.
Permutation arsa_order(const DissimilarityMatrix& d, const ArsaParams& params, std::uint64_t seed);

Permutation reorder(const Matrix& m, const AlgorithmSpec& spec, std::uint64_t seed);

/// max |i-j| over nonzero off-diagonal entries (0 for an empty graph).
std::size_t bandwidth(const Matrix& m);

}  // namespace patternbench
