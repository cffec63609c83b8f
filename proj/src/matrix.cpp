#include "patternbench/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "patternbench/errors.hpp"

namespace patternbench {

std::string_view to_string(MatrixKind kind) {
  return kind == MatrixKind::Binary ? "binary" : "continuous";
}

MatrixKind parse_matrix_kind(std::string_view name) {
  if (name == "binary") return MatrixKind::Binary;
  if (name == "continuous") return MatrixKind::Continuous;
  throw ConfigError("unknown matrix kind '" + std::string(name) + "'");
}

namespace {

void check_value(MatrixKind kind, float v, std::size_t i, std::size_t j) {
  if (!(v >= 0.0f && v <= 1.0f)) {
    throw InvariantError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") = " + std::to_string(v) + " outside [0,1]");
  }
  if (kind == MatrixKind::Binary && v != 0.0f && v != 1.0f) {
    throw KindError("binary matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                    ") = " + std::to_string(v) + " is not 0 or 1");
  }
}

}  // namespace

Matrix::Matrix(std::size_t n, MatrixKind kind) : n_(n), kind_(kind), data_(n * n, 0.0f) {}

Matrix Matrix::from_upper(std::size_t n, MatrixKind kind, std::span<const float> values) {
  if (values.size() != n * n) {
    throw DimensionError("expected " + std::to_string(n * n) + " values, got " +
                         std::to_string(values.size()));
  }
  Matrix m(n, kind);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const float v = values[i * n + j];
      check_value(kind, v, i, j);
      m.data_[i * n + j] = v;
      m.data_[j * n + i] = v;
    }
  }
  return m;
}

Matrix Matrix::from_symmetric(std::size_t n, MatrixKind kind, std::span<const float> values) {
  if (values.size() != n * n) {
    throw DimensionError("expected " + std::to_string(n * n) + " values, got " +
                         std::to_string(values.size()));
  }
  if (auto bad = find_asymmetry(values, n)) {
    throw InvariantError("matrix is not symmetric at (" + std::to_string(bad->row) + "," +
                         std::to_string(bad->col) + ")");
  }
  return from_upper(n, kind, values);
}

float Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) {
    throw DimensionError("index (" + std::to_string(i) + "," + std::to_string(j) +
                         ") out of range for n=" + std::to_string(n_));
  }
  return data_[i * n_ + j];
}

void Matrix::set(std::size_t i, std::size_t j, float value) {
  if (i >= n_ || j >= n_) {
    throw DimensionError("index (" + std::to_string(i) + "," + std::to_string(j) +
                         ") out of range for n=" + std::to_string(n_));
  }
  check_value(kind_, value, i, j);
  data_[i * n_ + j] = value;
  data_[j * n_ + i] = value;
}

std::size_t Matrix::count_nonzero() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](float v) { return v > 0.0f; }));
}

Matrix Matrix::with_diagonal(float value) const {
  if (value != 0.0f && value != 1.0f) {
    throw PreconditionError("diagonal normalization value must be 0 or 1");
  }
  Matrix out = *this;
  for (std::size_t i = 0; i < n_; ++i) out.data_[i * n_ + i] = value;
  return out;
}

std::optional<AsymmetryReport> find_asymmetry(std::span<const float> values, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const float up = values[i * n + j];
      const float lo = values[j * n + i];
      if (up != lo) return AsymmetryReport{i, j, up, lo};
    }
  }
  return std::nullopt;
}

Permutation::Permutation(std::vector<std::size_t> order) : order_(std::move(order)) {
  if (!is_bijection(order_)) throw InvariantError("permutation is not a bijection");
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Permutation p;
  p.order_ = std::move(order);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) inv[order_[i]] = i;
  Permutation p;
  p.order_ = std::move(inv);
  return p;
}

Permutation Permutation::then(const Permutation& other) const {
  if (other.size() != size()) throw DimensionError("permutation sizes differ");
  std::vector<std::size_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = order_[other.order_[i]];
  Permutation p;
  p.order_ = std::move(out);
  return p;
}

bool Permutation::is_bijection(std::span<const std::size_t> order) {
  std::vector<bool> seen(order.size(), false);
  for (std::size_t v : order) {
    if (v >= order.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

void DissimilarityMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) throw DimensionError("dissimilarity index out of range");
  if (value < 0.0) throw InvariantError("dissimilarities must be nonnegative");
  if (i == j && value != 0.0) throw InvariantError("dissimilarity diagonal must be zero");
  data_[i * n_ + j] = value;
  data_[j * n_ + i] = value;
}

Matrix permute(const Matrix& m, const Permutation& p) {
  const std::size_t n = m.size();
  if (p.size() != n) {
    throw DimensionError("permutation length " + std::to_string(p.size()) +
                         " does not match matrix size " + std::to_string(n));
  }
  std::vector<float> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = m.row(p[i]);
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = src[p[j]];
  }
  return Matrix::from_upper(n, m.kind(), out);
}

Matrix swap_pair(const Matrix& m, std::size_t i, std::size_t j) {
  const std::size_t n = m.size();
  if (i >= n || j >= n) {
    throw DimensionError("swap index out of range for n=" + std::to_string(n));
  }
  if (i == j) throw PreconditionError("swap_pair needs two distinct indices");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::swap(order[i], order[j]);
  return permute(m, Permutation(std::move(order)));
}

Matrix binarize(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<float> out(m.values().begin(), m.values().end());
  for (float& v : out) v = v > 0.0f ? 1.0f : 0.0f;
  return Matrix::from_upper(n, MatrixKind::Binary, out);
}

DissimilarityMatrix dissimilarity(const Matrix& m) {
  const std::size_t n = m.size();
  DissimilarityMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = m.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto rj = m.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double diff = static_cast<double>(ri[k]) - static_cast<double>(rj[k]);
        acc += diff * diff;
      }
      d.set(i, j, std::sqrt(acc));
    }
  }
  return d;
}

DissimilarityMatrix permute(const DissimilarityMatrix& d, const Permutation& p) {
  const std::size_t n = d.size();
  if (p.size() != n) throw DimensionError("permutation length does not match dissimilarity size");
  DissimilarityMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, d(p[i], p[j]));
  }
  return out;
}

}  // namespace patternbench
