#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace patternbench {

enum class MatrixKind : unsigned char { Binary = 0, Continuous = 1 };

std::string_view to_string(MatrixKind kind);
MatrixKind parse_matrix_kind(std::string_view name);

/// Dense symmetric n x n matrix with entries in [0,1], stored row-major as
/// float32. Binary matrices hold only 0 and 1. Every mutation writes both
/// (i,j) and (j,i), so symmetry holds exactly at all times.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t n, MatrixKind kind);

  /// Builds a matrix from n*n row-major values. The upper triangle wins: the
  /// lower triangle is overwritten with its mirror. Throws on out-of-range
  /// values or non-binary values in a Binary matrix.
  static Matrix from_upper(std::size_t n, MatrixKind kind, std::span<const float> values);

  /// Like from_upper, but requires the input to be exactly symmetric.
  static Matrix from_symmetric(std::size_t n, MatrixKind kind, std::span<const float> values);

  std::size_t size() const noexcept { return n_; }
  MatrixKind kind() const noexcept { return kind_; }
  bool is_binary() const noexcept { return kind_ == MatrixKind::Binary; }

  float operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  float at(std::size_t i, std::size_t j) const;

  /// Writes value at (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, float value);

  std::span<const float> values() const noexcept { return data_; }
  std::span<const float> row(std::size_t i) const noexcept {
    return std::span<const float>(data_).subspan(i * n_, n_);
  }

  std::size_t count_nonzero() const noexcept;

  /// Optionally forces every diagonal entry to the given value (0 or 1).
  Matrix with_diagonal(float value) const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t n_ = 0;
  MatrixKind kind_ = MatrixKind::Binary;
  std::vector<float> data_;
};

/// Reports the first asymmetric pair (tolerance 0), if any.
struct AsymmetryReport {
  std::size_t row;
  std::size_t col;
  float upper;
  float lower;
};
std::optional<AsymmetryReport> find_asymmetry(std::span<const float> values, std::size_t n);

/// A bijection on [0, n). order[i] is the source index placed at position i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> order);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return order_.size(); }
  std::size_t operator[](std::size_t i) const noexcept { return order_[i]; }
  const std::vector<std::size_t>& order() const noexcept { return order_; }

  Permutation inverse() const;
  /// Position-wise composition: result[i] = (*this)[other[i]].
  Permutation then(const Permutation& other) const;

  static bool is_bijection(std::span<const std::size_t> order);

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> order_;
};

/// Symmetric nonnegative matrix with a zero diagonal, stored in double.
class DissimilarityMatrix {
 public:
  DissimilarityMatrix() = default;
  explicit DissimilarityMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value);

  std::span<const double> values() const noexcept { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// result(i,j) = m(p[i], p[j]).
Matrix permute(const Matrix& m, const Permutation& p);

/// Swaps rows and columns i and j (the transposition (i j)).
Matrix swap_pair(const Matrix& m, std::size_t i, std::size_t j);

/// result(i,j) = 1 iff m(i,j) > 0.
Matrix binarize(const Matrix& m);

/// Euclidean distance between rows.
DissimilarityMatrix dissimilarity(const Matrix& m);

DissimilarityMatrix permute(const DissimilarityMatrix& d, const Permutation& p);

}  // namespace patternbench
