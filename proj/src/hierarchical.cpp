#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "patternbench/errors.hpp"
#include "patternbench/reorder.hpp"

namespace patternbench {

std::string_view to_string(Linkage l) {
  switch (l) {
    case Linkage::Single: return "single";
    case Linkage::Complete: return "complete";
    case Linkage::Average: return "average";
    case Linkage::Ward: return "ward";
  }
  return "?";
}

std::string_view to_string(LeafRule r) {
  switch (r) {
    case LeafRule::Plain: return "plain";
    case LeafRule::GW: return "gw";
    case LeafRule::OLO: return "olo";
  }
  return "?";
}

Linkage parse_linkage(std::string_view name) {
  for (Linkage l : {Linkage::Single, Linkage::Complete, Linkage::Average, Linkage::Ward}) {
    if (to_string(l) == name) return l;
  }
  throw ConfigError("unknown linkage '" + std::string(name) + "'");
}

LeafRule parse_leaf_rule(std::string_view name) {
  for (LeafRule r : {LeafRule::Plain, LeafRule::GW, LeafRule::OLO}) {
    if (to_string(r) == name) return r;
  }
  throw ConfigError("unknown leaf rule '" + std::string(name) + "'");
}

std::vector<std::size_t> Dendrogram::leaf_order(std::size_t node) const {
  std::vector<std::size_t> out;
  std::vector<std::size_t> stack{node};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (is_leaf(v)) {
      out.push_back(v);
      continue;
    }
    const Merge& mg = merges[v - leaves];
    stack.push_back(mg.right);
    stack.push_back(mg.left);
  }
  return out;
}

Dendrogram agglomerate(const DissimilarityMatrix& d, Linkage linkage) {
  const std::size_t n = d.size();
  Dendrogram tree;
  tree.leaves = n;
  if (n < 2) return tree;

  std::vector<double> dist(d.values().begin(), d.values().end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return dist[i * n + j]; };
  std::vector<std::size_t> node(n);
  std::vector<std::size_t> size(n, 1);
  std::vector<char> active(n, 1);
  for (std::size_t i = 0; i < n; ++i) node[i] = i;

  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (active[j] && at(i, j) < best) {
          best = at(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    const double ni = static_cast<double>(size[bi]);
    const double nj = static_cast<double>(size[bj]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      const double dik = at(bi, k);
      const double djk = at(bj, k);
      double merged = 0.0;
      switch (linkage) {
        case Linkage::Single: merged = std::min(dik, djk); break;
        case Linkage::Complete: merged = std::max(dik, djk); break;
        case Linkage::Average: merged = (ni * dik + nj * djk) / (ni + nj); break;
        case Linkage::Ward: {
          const double nk = static_cast<double>(size[k]);
          const double sq =
              ((ni + nk) * dik * dik + (nj + nk) * djk * djk - nk * best * best) / (ni + nj + nk);
          merged = std::sqrt(std::max(0.0, sq));
          break;
        }
      }
      at(bi, k) = merged;
      at(k, bi) = merged;
    }
    tree.merges.push_back({node[bi], node[bj], best, size[bi] + size[bj]});
    node[bi] = n + step;
    size[bi] += size[bj];
    active[bj] = 0;
  }
  return tree;
}

namespace {

std::vector<std::size_t> gw_order(const Dendrogram& tree, const DissimilarityMatrix& d) {
  const std::size_t n = tree.leaves;
  std::vector<std::vector<std::size_t>> orders(n + tree.merges.size());
  for (std::size_t i = 0; i < n; ++i) orders[i] = {i};
  for (std::size_t k = 0; k < tree.merges.size(); ++k) {
    auto left = std::move(orders[tree.merges[k].left]);
    auto right = std::move(orders[tree.merges[k].right]);
    // Orientations: (L, R), (rev L, R), (L, rev R), (rev L, rev R).
    const double costs[4] = {d(left.back(), right.front()), d(left.front(), right.front()),
                             d(left.back(), right.back()), d(left.front(), right.back())};
    int best = 0;
    for (int o = 1; o < 4; ++o) {
      if (costs[o] < costs[best]) best = o;
    }
    if (best == 1 || best == 3) std::reverse(left.begin(), left.end());
    if (best == 2 || best == 3) std::reverse(right.begin(), right.end());
    left.insert(left.end(), right.begin(), right.end());
    orders[n + k] = std::move(left);
  }
  return std::move(orders[tree.root()]);
}

// Optimal leaf ordering. Every leaf pair (i, j) has a unique lowest common
// ancestor, so the optimal cost of a subtree ordering that starts at i and
// ends at j fits in one n x n table, filled bottom-up.
class OptimalLeafOrdering {
 public:
  OptimalLeafOrdering(const Dendrogram& tree, const DissimilarityMatrix& d)
      : tree_(tree), d_(d), n_(tree.leaves), cost_(n_ * n_, 0.0), via_h_(n_ * n_), via_l_(n_ * n_) {}

  std::vector<std::size_t> solve() {
    const std::size_t nodes = n_ + tree_.merges.size();
    leaves_.resize(nodes);
    for (std::size_t i = 0; i < n_; ++i) leaves_[i] = {i};
    for (std::size_t k = 0; k < tree_.merges.size(); ++k) {
      const auto& mg = tree_.merges[k];
      auto& all = leaves_[n_ + k];
      all = leaves_[mg.left];
      all.insert(all.end(), leaves_[mg.right].begin(), leaves_[mg.right].end());
      combine(mg.left, mg.right);
    }
    const auto& root = tree_.merges.back();
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i : leaves_[root.left]) {
      for (std::size_t j : leaves_[root.right]) {
        if (cost(i, j) < best) {
          best = cost(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    std::vector<std::size_t> order;
    order.reserve(n_);
    unfold(bi, bj, order);
    return order;
  }

 private:
  double& cost(std::size_t i, std::size_t j) { return cost_[i * n_ + j]; }

  // Leaves of `node` that may end an ordering of `node` starting at leaf i;
  // in_first marks the leaves of node's first child.
  const std::vector<std::size_t>& far_side(std::size_t node, std::size_t i,
                                           const std::vector<char>& in_first) const {
    if (tree_.is_leaf(node)) return leaves_[node];
    const auto& mg = tree_.merges[node - n_];
    return in_first[i] ? leaves_[mg.right] : leaves_[mg.left];
  }

  void mark_first_child(std::size_t node, std::vector<char>& in_first) const {
    if (tree_.is_leaf(node)) return;
    for (std::size_t leaf : leaves_[tree_.merges[node - n_].left]) in_first[leaf] = 1;
  }

  void combine(std::size_t w, std::size_t x) {
    const auto& lw = leaves_[w];
    const auto& lx = leaves_[x];
    std::vector<char> first_w(n_, 0);
    std::vector<char> first_x(n_, 0);
    mark_first_child(w, first_w);
    mark_first_child(x, first_x);
    // Indexed by leaf id of x.
    std::vector<double> t(n_);
    std::vector<std::size_t> t_arg(n_);
    for (std::size_t i : lw) {
      const auto& hs = far_side(w, i, first_w);
      // t[l] = min_h cost(i, h) + d(h, l): best way to leave w from i into l.
      for (std::size_t l : lx) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t h : hs) {
          const double c = cost(i, h) + d_(h, l);
          if (c < best) {
            best = c;
            arg = h;
          }
        }
        t[l] = best;
        t_arg[l] = arg;
      }
      for (std::size_t j : lx) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_l = 0;
        for (std::size_t l : far_side(x, j, first_x)) {
          const double c = t[l] + cost(l, j);
          if (c < best) {
            best = c;
            best_l = l;
          }
        }
        const std::size_t best_h = t_arg[best_l];
        cost(i, j) = best;
        cost(j, i) = best;
        via_h_[i * n_ + j] = best_h;
        via_l_[i * n_ + j] = best_l;
        via_h_[j * n_ + i] = best_l;
        via_l_[j * n_ + i] = best_h;
      }
    }
  }

  // Order from i to j: order(i .. h) followed by order(l .. j).
  void unfold(std::size_t i, std::size_t j, std::vector<std::size_t>& out) const {
    if (i == j) {
      out.push_back(i);
      return;
    }
    unfold(i, via_h_[i * n_ + j], out);
    unfold(via_l_[i * n_ + j], j, out);
  }

  const Dendrogram& tree_;
  const DissimilarityMatrix& d_;
  std::size_t n_;
  std::vector<double> cost_;
  std::vector<std::size_t> via_h_;
  std::vector<std::size_t> via_l_;
  std::vector<std::vector<std::size_t>> leaves_;
};

}  // namespace

Permutation leaf_ordering(const Dendrogram& tree, const DissimilarityMatrix& d, LeafRule rule) {
  if (d.size() != tree.leaves) throw DimensionError("dendrogram and dissimilarity sizes differ");
  if (tree.leaves < 2) return Permutation::identity(tree.leaves);
  switch (rule) {
    case LeafRule::Plain: return Permutation(tree.leaf_order(tree.root()));
    case LeafRule::GW: return Permutation(gw_order(tree, d));
    case LeafRule::OLO: return Permutation(OptimalLeafOrdering(tree, d).solve());
  }
  return Permutation::identity(tree.leaves);
}

Permutation hierarchical_order(const DissimilarityMatrix& d, Linkage linkage, LeafRule rule) {
  return leaf_ordering(agglomerate(d, linkage), d, rule);
}

double adjacent_dissimilarity(const DissimilarityMatrix& d, const Permutation& p) {
  double sum = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) sum += d(p[i - 1], p[i]);
  return sum;
}

}  // namespace patternbench
