#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace subalg {

inline constexpr std::size_t kDefaultMonomialCap = 1'000'000;

/// Exponent tuple k of the monomial x^k. Entries are nonnegative.
class PowerVector {
 public:
  PowerVector() = default;
  explicit PowerVector(std::vector<int> exponents);
  PowerVector(std::initializer_list<int> exponents);

  /// n copies of `value`.
  static PowerVector uniform(std::size_t n, int value);

  std::size_t size() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  std::span<const int> exponents() const noexcept { return exps_; }
  int total_degree() const noexcept;

  /// Concatenation (a, b), used for stacked lags and (x, y) tuples.
  PowerVector concat(const PowerVector& other) const;
  /// `times` copies of this vector end to end.
  PowerVector repeat(std::size_t times) const;

  friend bool operator==(const PowerVector&, const PowerVector&) = default;

 private:
  std::vector<int> exps_;
};

/// Lexicographic order on equal-length power vectors: the first differing
/// coordinate decides. Throws InvalidInput on a length mismatch.
std::strong_ordering lex_compare(std::span<const int> a, std::span<const int> b);
std::strong_ordering lex_compare(const PowerVector& a, const PowerVector& b);

/// Integer exponent matrix indexing a monomial vector. Rows are pairwise
/// distinct and strictly decreasing in lexicographic order; every entry lies
/// in [0, bounds()(j)].
class PowerMatrix {
 public:
  /// Empty matrix (zero rows) over `vars` variables.
  explicit PowerMatrix(std::size_t vars = 0);

  /// Rows must already be strictly decreasing; throws InvalidInput otherwise.
  static PowerMatrix from_rows(std::size_t vars, const std::vector<PowerVector>& rows);
  /// Sorts rows into decreasing order and drops duplicates.
  static PowerMatrix canonical(std::size_t vars, std::vector<PowerVector> rows);
  /// Rows e_1, ..., e_n: the monomial vector equals x itself.
  static PowerMatrix identity(std::size_t vars);

  std::size_t rows() const noexcept { return vars_ == 0 ? 0 : data_.size() / vars_; }
  std::size_t vars() const noexcept { return vars_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const int> row(std::size_t i) const {
    return {data_.data() + i * vars_, vars_};
  }
  int operator()(std::size_t i, std::size_t j) const { return data_[i * vars_ + j]; }
  PowerVector row_vector(std::size_t i) const;

  /// Per-variable exponent bound: the enumeration bound when the matrix came
  /// from enumerate_power_matrix, else the column-wise maximum.
  const PowerVector& bounds() const noexcept { return bounds_; }
  int max_exponent() const noexcept;

  /// Rows at the given indices, which must be strictly increasing.
  PowerMatrix select_rows(std::span<const std::size_t> indices) const;
  /// Index of `k` among the rows, or rows() when absent. Binary search.
  std::size_t find(std::span<const int> k) const;

  friend bool operator==(const PowerMatrix& a, const PowerMatrix& b) {
    return a.vars_ == b.vars_ && a.data_ == b.data_;
  }

 private:
  friend PowerMatrix enumerate_power_matrix(const PowerVector&, std::size_t);

  std::size_t vars_ = 0;
  std::vector<int> data_;
  PowerVector bounds_;
};

/// All power vectors bounded by k_max, ∏(k_max(j)+1) rows in decreasing
/// lexicographic order. Throws Capacity if the row count exceeds `cap`.
PowerMatrix enumerate_power_matrix(const PowerVector& k_max,
                                   std::size_t cap = kDefaultMonomialCap);

/// Number of rows enumerate_power_matrix would produce, saturated at
/// SIZE_MAX on overflow.
std::size_t bounded_power_count(const PowerVector& k_max);

/// v(i) = ∏_j x(j)^K(i,j) with 0^0 = 1.
Eigen::VectorXd eval_monomial_vector(std::span<const double> x, const PowerMatrix& K);
Eigen::VectorXd eval_monomial_vector(const Eigen::VectorXd& x, const PowerMatrix& K);

/// Column k is eval_monomial_vector(samples.col(k), K). `samples` holds one
/// sample per column (vars × s).
Eigen::MatrixXd build_data_matrix(const Eigen::MatrixXd& samples, const PowerMatrix& K);

/// Splits K into blocks of at most `block_limit` rows, lowest total degree
/// first (ties by ascending lexicographic order). Each block is a valid
/// PowerMatrix, i.e. decreasing within itself.
std::vector<PowerMatrix> partition_power_matrix(const PowerMatrix& K,
                                                std::size_t block_limit);

/// Union of the rows of a and b in canonical order (duplicates dropped).
PowerMatrix merge_power_matrices(const PowerMatrix& a, const PowerMatrix& b);

}  // namespace subalg
