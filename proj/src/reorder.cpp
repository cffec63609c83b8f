#include "patternbench/reorder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "patternbench/errors.hpp"
#include "patternbench/metrics.hpp"
#include "patternbench/random.hpp"

namespace patternbench {

std::string_view to_string(AlgorithmFamily f) {
  switch (f) {
    case AlgorithmFamily::Hierarchical: return "hierarchical";
    case AlgorithmFamily::Spectral: return "spectral";
    case AlgorithmFamily::Projection: return "projection";
    case AlgorithmFamily::Heuristic: return "heuristic";
    case AlgorithmFamily::Graph: return "graph";
    case AlgorithmFamily::Annealing: return "annealing";
  }
  return "?";
}

std::string AlgorithmSpec::name() const {
  switch (family) {
    case AlgorithmFamily::Hierarchical: return "hc_" + variant;
    case AlgorithmFamily::Spectral: return variant.empty() ? "spectral" : "spectral_" + variant;
    default: return variant;
  }
}

AlgorithmSpec AlgorithmSpec::parse(std::string_view name) {
  const std::string s(name);
  AlgorithmSpec spec;
  if (s.rfind("hc_", 0) == 0) {
    const auto rest = s.substr(3);
    const auto cut = rest.find('_');
    if (cut == std::string::npos) throw ConfigError("hierarchical algorithm needs hc_<linkage>_<rule>");
    parse_linkage(rest.substr(0, cut));
    parse_leaf_rule(rest.substr(cut + 1));
    spec.family = AlgorithmFamily::Hierarchical;
    spec.variant = rest;
  } else if (s == "spectral" || s == "spectral_norm") {
    spec.family = AlgorithmFamily::Spectral;
    spec.variant = s == "spectral" ? "" : "norm";
  } else if (s == "pca" || s == "mds" || s == "lle") {
    spec.family = AlgorithmFamily::Projection;
    spec.variant = s;
  } else if (s == "barycenter" || s == "moment") {
    spec.family = AlgorithmFamily::Heuristic;
    spec.variant = s;
  } else if (s == "rcm") {
    spec.family = AlgorithmFamily::Graph;
    spec.variant = s;
  } else if (s == "arsa") {
    spec.family = AlgorithmFamily::Annealing;
    spec.variant = s;
  } else {
    throw ConfigError("unknown algorithm '" + s + "'");
  }
  return spec;
}

double AlgorithmSpec::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::vector<std::string> registered_algorithms() {
  return {"hc_ward_olo", "hc_ward_gw", "hc_average_plain", "spectral", "spectral_norm", "pca",
          "mds",         "lle",        "barycenter",       "moment",   "rcm",           "arsa"};
}

std::size_t bandwidth(const Matrix& m) {
  std::size_t bw = 0;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) != 0.0f) bw = std::max(bw, j - i);
    }
  }
  return bw;
}

namespace {

// Indices sorted by (key, index).
std::vector<std::size_t> order_by(const std::vector<double>& key) {
  std::vector<std::size_t> idx(key.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  return idx;
}

// First component with magnitude above eps made positive.
void fix_sign(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

std::vector<std::vector<std::size_t>> connected_components(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      const std::size_t v = comp[head];
      for (std::size_t u = 0; u < n; ++u) {
        if (!seen[u] && u != v && m(v, u) != 0.0f) {
          seen[u] = 1;
          comp.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return comps;
}

std::vector<std::size_t> fiedler_component(const Matrix& m, const std::vector<std::size_t>& comp,
                                           bool normalized) {
  const auto k = static_cast<Eigen::Index>(comp.size());
  if (k <= 2) return comp;
  Eigen::MatrixXd w(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      w(a, b) = a == b ? 0.0 : static_cast<double>(m(comp[static_cast<std::size_t>(a)],
                                                      comp[static_cast<std::size_t>(b)]));
    }
  }
  const Eigen::VectorXd deg = w.rowwise().sum();
  Eigen::MatrixXd lap;
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(k);
  if (normalized) {
    scale = deg.array().rsqrt().matrix();
    lap = Eigen::MatrixXd::Identity(k, k) - scale.asDiagonal() * w * scale.asDiagonal();
  } else {
    lap = Eigen::MatrixXd(deg.asDiagonal()) - w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) throw Error("Laplacian eigensolve failed");
  Eigen::VectorXd v = solver.eigenvectors().col(1).cwiseProduct(scale);
  fix_sign(v);
  std::vector<double> key(v.data(), v.data() + v.size());
  std::vector<std::size_t> out;
  for (std::size_t i : order_by(key)) out.push_back(comp[i]);
  return out;
}

Eigen::MatrixXd as_eigen(const Matrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd x(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      x(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return x;
}

Permutation sort_by_coordinate(Eigen::VectorXd coord) {
  fix_sign(coord);
  return Permutation(order_by(std::vector<double>(coord.data(), coord.data() + coord.size())));
}

Eigen::VectorXd pca_coordinates(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw Error("PCA eigensolve failed");
  return centered * solver.eigenvectors().col(cov.rows() - 1);
}

Eigen::VectorXd mds_coordinates(const Matrix& m) {
  const DissimilarityMatrix d = dissimilarity(m);
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd sq(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      sq(i, j) = v * v;
    }
  }
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd gram = -0.5 * centering * sq * centering;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) throw Error("MDS eigensolve failed");
  const double top = std::max(0.0, solver.eigenvalues()(n - 1));
  return solver.eigenvectors().col(n - 1) * std::sqrt(top);
}

Eigen::VectorXd lle_coordinates(const Eigen::MatrixXd& x, int neighbors) {
  const Eigen::Index n = x.rows();
  const auto k = static_cast<Eigen::Index>(std::min<Eigen::Index>(std::max(1, neighbors), n - 1));
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) dist[static_cast<std::size_t>(j)] = (x.row(i) - x.row(j)).squaredNorm();
    dist[static_cast<std::size_t>(i)] = std::numeric_limits<double>::infinity();
    const auto nearest = order_by(dist);
    Eigen::MatrixXd z(k, x.cols());
    for (Eigen::Index a = 0; a < k; ++a) z.row(a) = x.row(static_cast<Eigen::Index>(nearest[static_cast<std::size_t>(a)])) - x.row(i);
    Eigen::MatrixXd gram = z * z.transpose();
    const double trace = gram.trace();
    gram.diagonal().array() += trace > 0.0 ? 1e-3 * trace : 1e-3;
    Eigen::VectorXd w = gram.ldlt().solve(Eigen::VectorXd::Ones(k));
    w /= w.sum();
    for (Eigen::Index a = 0; a < k; ++a) weights(i, static_cast<Eigen::Index>(nearest[static_cast<std::size_t>(a)])) = w(a);
  }
  const Eigen::MatrixXd residual = Eigen::MatrixXd::Identity(n, n) - weights;
  const Eigen::MatrixXd cost = residual.transpose() * residual;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cost);
  if (solver.info() != Eigen::Success) throw Error("LLE eigensolve failed");
  return solver.eigenvectors().col(1);
}

bool rows_all_equal(const Matrix& m) {
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (!std::equal(m.row(i).begin(), m.row(i).end(), m.row(0).begin())) return false;
  }
  return true;
}

}  // namespace

Permutation fiedler_order(const Matrix& m, bool normalized) {
  std::vector<std::size_t> order;
  order.reserve(m.size());
  for (const auto& comp : connected_components(m)) {
    const auto part = fiedler_component(m, comp, normalized);
    order.insert(order.end(), part.begin(), part.end());
  }
  return Permutation(std::move(order));
}

Permutation projection_order(const Matrix& m, ProjectionMethod method, int lle_neighbors) {
  if (m.size() < 3 || rows_all_equal(m)) return Permutation::identity(m.size());
  switch (method) {
    case ProjectionMethod::PCA: return sort_by_coordinate(pca_coordinates(as_eigen(m)));
    case ProjectionMethod::MDS: return sort_by_coordinate(mds_coordinates(m));
    case ProjectionMethod::LLE: return sort_by_coordinate(lle_coordinates(as_eigen(m), lle_neighbors));
  }
  return Permutation::identity(m.size());
}

Permutation heuristic_order(const Matrix& m, HeuristicMethod method, int max_iterations) {
  const std::size_t n = m.size();
  // position[v] = current position of vertex v.
  std::vector<double> position(n);
  std::iota(position.begin(), position.end(), 0.0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const int rounds = method == HeuristicMethod::Moment ? 1 : std::max(1, max_iterations);

  for (int round = 0; round < rounds; ++round) {
    std::vector<double> key(n);
    for (std::size_t i = 0; i < n; ++i) {
      double mass = 0.0;
      double moment = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double a = m(i, j);
        mass += a;
        moment += a * position[j];
      }
      key[i] = mass > 0.0 ? moment / mass : position[i];
    }
    // Ties keep the current relative order.
    std::vector<std::size_t> next = order;
    std::stable_sort(next.begin(), next.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    if (next == order) break;
    order = std::move(next);
    for (std::size_t p = 0; p < n; ++p) position[order[p]] = static_cast<double>(p);
  }
  return Permutation(std::move(order));
}

Permutation rcm_order(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && m(i, j) != 0.0f) adj[i].push_back(j);
    }
  }
  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = adj[i].size();
  auto by_degree = [&](std::size_t a, std::size_t b) {
    return degree[a] != degree[b] ? degree[a] < degree[b] : a < b;
  };
  for (auto& nb : adj) std::sort(nb.begin(), nb.end(), by_degree);

  std::vector<std::size_t> vertices(n);
  std::iota(vertices.begin(), vertices.end(), std::size_t{0});
  std::sort(vertices.begin(), vertices.end(), by_degree);

  std::vector<char> seen(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t start : vertices) {
    if (seen[start]) continue;
    seen[start] = 1;
    const auto component_begin = order.size();
    std::queue<std::size_t> queue;
    queue.push(start);
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop();
      order.push_back(v);
      for (std::size_t u : adj[v]) {
        if (!seen[u]) {
          seen[u] = 1;
          queue.push(u);
        }
      }
    }
    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(component_begin), order.end());
  }
  return Permutation(std::move(order));
}

namespace {

class Annealer {
 public:
  Annealer(const DissimilarityMatrix& d, std::vector<std::size_t> order)
      : d_(d), n_(d.size()), order_(std::move(order)) {}

  // Change of sum_{i<j} d |i-j| when positions p < q are swapped.
  double swap_gain(std::size_t p, std::size_t q) const {
    const std::size_t a = order_[p];
    const std::size_t b = order_[q];
    double gain = 0.0;
    for (std::size_t t = 0; t < n_; ++t) {
      if (t == p || t == q) continue;
      const std::size_t c = order_[t];
      const double dist_q = std::abs(static_cast<double>(q) - static_cast<double>(t));
      const double dist_p = std::abs(static_cast<double>(p) - static_cast<double>(t));
      gain += (d_(a, c) - d_(b, c)) * (dist_q - dist_p);
    }
    return gain;
  }

  // Change of the same sum when positions [p, q] are reversed.
  double reversal_gain(std::size_t p, std::size_t q) const {
    double gain = 0.0;
    for (std::size_t t = p; t <= q; ++t) {
      const std::size_t c = order_[t];
      double left = 0.0;
      double right = 0.0;
      for (std::size_t s = 0; s < p; ++s) left += d_(c, order_[s]);
      for (std::size_t s = q + 1; s < n_; ++s) right += d_(c, order_[s]);
      gain += (static_cast<double>(p + q) - 2.0 * static_cast<double>(t)) * (left - right);
    }
    return gain;
  }

  struct Move {
    bool reversal = false;
    std::size_t p = 0;
    std::size_t q = 0;
  };

  Move propose(Rng& rng) const {
    Move mv;
    mv.reversal = uniform_int(rng, 0, 1) == 1;
    mv.p = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n_) - 1));
    auto q = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n_) - 2));
    if (q >= mv.p) ++q;
    mv.q = q;
    if (mv.p > mv.q) std::swap(mv.p, mv.q);
    return mv;
  }

  // Objective delta (linear seriation criterion, minimized).
  double delta(const Move& mv) const {
    return -(mv.reversal ? reversal_gain(mv.p, mv.q) : swap_gain(mv.p, mv.q));
  }

  void apply(const Move& mv) {
    if (mv.reversal) {
      std::reverse(order_.begin() + static_cast<std::ptrdiff_t>(mv.p),
                   order_.begin() + static_cast<std::ptrdiff_t>(mv.q) + 1);
    } else {
      std::swap(order_[mv.p], order_[mv.q]);
    }
  }

  const std::vector<std::size_t>& order() const noexcept { return order_; }

 private:
  const DissimilarityMatrix& d_;
  std::size_t n_;
  std::vector<std::size_t> order_;
};

}  // namespace

Permutation arsa_order(const DissimilarityMatrix& d, const ArsaParams& params, std::uint64_t seed) {
  const std::size_t n = d.size();
  if (n < 3) return Permutation::identity(n);
  if (!(params.cooling > 0.0 && params.cooling < 1.0)) throw ConfigError("ARSA cooling must be in (0,1)");
  Rng rng(seed);
  std::vector<std::size_t> start(n);
  std::iota(start.begin(), start.end(), std::size_t{0});
  Annealer annealer(d, start);

  double temperature = 0.0;
  if (params.initial_temperature) {
    temperature = *params.initial_temperature;
  } else {
    // Mean uphill step of random moves from the start, accepted with
    // probability 1/2 at T0.
    double uphill = 0.0;
    int count = 0;
    for (std::size_t s = 0; s < std::max<std::size_t>(100, n); ++s) {
      const double dl = annealer.delta(annealer.propose(rng));
      if (dl > 0.0) {
        uphill += dl;
        ++count;
      }
    }
    temperature = count > 0 ? (uphill / count) / std::log(2.0) : 1.0;
  }
  if (!(temperature > 0.0)) throw ConfigError("ARSA initial temperature must be positive");

  const std::size_t total = params.iterations ? *params.iterations : 100 * n * n;
  const std::size_t per_stage = std::max<std::size_t>(1, total / 100);
  double current = linear_seriation(d);
  double best = current;
  std::vector<std::size_t> best_order = annealer.order();
  for (std::size_t it = 0; it < total; ++it) {
    const auto mv = annealer.propose(rng);
    const double dl = annealer.delta(mv);
    if (dl <= 0.0 || uniform_unit(rng) < std::exp(-dl / temperature)) {
      annealer.apply(mv);
      current += dl;
      if (current < best - 1e-12) {
        best = current;
        best_order = annealer.order();
      }
    }
    if ((it + 1) % per_stage == 0) temperature *= params.cooling;
  }
  return Permutation(std::move(best_order));
}

Permutation reorder(const Matrix& m, const AlgorithmSpec& spec, std::uint64_t seed) {
  const std::size_t n = m.size();
  if (n <= 1) return Permutation::identity(n);
  switch (spec.family) {
    case AlgorithmFamily::Hierarchical: {
      const auto cut = spec.variant.find('_');
      if (cut == std::string::npos) throw ConfigError("bad hierarchical variant '" + spec.variant + "'");
      return hierarchical_order(dissimilarity(m), parse_linkage(spec.variant.substr(0, cut)),
                                parse_leaf_rule(spec.variant.substr(cut + 1)));
    }
    case AlgorithmFamily::Spectral:
      if (spec.variant != "" && spec.variant != "norm") {
        throw ConfigError("bad spectral variant '" + spec.variant + "'");
      }
      return fiedler_order(m, spec.variant == "norm");
    case AlgorithmFamily::Projection: {
      const int k = static_cast<int>(spec.param("k", 10));
      if (spec.variant == "pca") return projection_order(m, ProjectionMethod::PCA, k);
      if (spec.variant == "mds") return projection_order(m, ProjectionMethod::MDS, k);
      if (spec.variant == "lle") return projection_order(m, ProjectionMethod::LLE, k);
      throw ConfigError("bad projection variant '" + spec.variant + "'");
    }
    case AlgorithmFamily::Heuristic: {
      const int cap = static_cast<int>(spec.param("max_iterations", 100));
      if (spec.variant == "barycenter") return heuristic_order(m, HeuristicMethod::Barycenter, cap);
      if (spec.variant == "moment") return heuristic_order(m, HeuristicMethod::Moment, cap);
      throw ConfigError("bad heuristic variant '" + spec.variant + "'");
    }
    case AlgorithmFamily::Graph:
      if (spec.variant != "rcm") throw ConfigError("bad graph variant '" + spec.variant + "'");
      return rcm_order(m);
    case AlgorithmFamily::Annealing: {
      ArsaParams params;
      params.cooling = spec.param("cooling", params.cooling);
      if (spec.params.count("initial_temperature")) {
        params.initial_temperature = spec.params.at("initial_temperature");
      }
      if (spec.params.count("iterations")) {
        params.iterations = static_cast<std::size_t>(spec.params.at("iterations"));
      }
      return arsa_order(dissimilarity(m), params, seed);
    }
  }
  throw ConfigError("unknown algorithm family");
}

}  // namespace patternbench
