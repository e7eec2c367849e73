#include "subalg/monomials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "subalg/error.hpp"

namespace subalg {

PowerVector::PowerVector(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    require(e >= 0, ErrorCode::InvalidInput, "power vector entries must be nonnegative");
  }
}

PowerVector::PowerVector(std::initializer_list<int> exponents)
    : PowerVector(std::vector<int>(exponents)) {}

PowerVector PowerVector::uniform(std::size_t n, int value) {
  return PowerVector(std::vector<int>(n, value));
}

int PowerVector::total_degree() const noexcept {
  return std::accumulate(exps_.begin(), exps_.end(), 0);
}

PowerVector PowerVector::concat(const PowerVector& other) const {
  std::vector<int> out = exps_;
  out.insert(out.end(), other.exps_.begin(), other.exps_.end());
  return PowerVector(std::move(out));
}

PowerVector PowerVector::repeat(std::size_t times) const {
  std::vector<int> out;
  out.reserve(exps_.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), exps_.begin(), exps_.end());
  return PowerVector(std::move(out));
}

std::strong_ordering lex_compare(std::span<const int> a, std::span<const int> b) {
  require(a.size() == b.size(), ErrorCode::InvalidInput,
          "lex_compare: power vectors of lengths " + std::to_string(a.size()) + " and " +
              std::to_string(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

std::strong_ordering lex_compare(const PowerVector& a, const PowerVector& b) {
  return lex_compare(a.exponents(), b.exponents());
}

namespace {

PowerVector column_max(std::size_t vars, const std::vector<int>& data) {
  std::vector<int> mx(vars, 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    mx[i % vars] = std::max(mx[i % vars], data[i]);
  }
  return PowerVector(std::move(mx));
}

}  // namespace

PowerMatrix::PowerMatrix(std::size_t vars) : vars_(vars), bounds_(PowerVector::uniform(vars, 0)) {}

PowerMatrix PowerMatrix::from_rows(std::size_t vars, const std::vector<PowerVector>& rows) {
  PowerMatrix K(vars);
  require(vars > 0 || rows.empty(), ErrorCode::InvalidInput,
          "power matrix over zero variables cannot have rows");
  K.data_.reserve(rows.size() * vars);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == vars, ErrorCode::InvalidInput,
            "power matrix row " + std::to_string(i) + " has length " +
                std::to_string(rows[i].size()) + ", expected " + std::to_string(vars));
    if (i > 0) {
      require(lex_compare(rows[i - 1], rows[i]) == std::strong_ordering::greater,
              ErrorCode::InvalidInput,
              "power matrix rows must be strictly decreasing in lexicographic order (row " +
                  std::to_string(i) + ")");
    }
    auto e = rows[i].exponents();
    K.data_.insert(K.data_.end(), e.begin(), e.end());
  }
  K.bounds_ = column_max(vars, K.data_);
  return K;
}

PowerMatrix PowerMatrix::canonical(std::size_t vars, std::vector<PowerVector> rows) {
  std::sort(rows.begin(), rows.end(), [](const PowerVector& a, const PowerVector& b) {
    return lex_compare(a, b) == std::strong_ordering::greater;
  });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return from_rows(vars, rows);
}

PowerMatrix PowerMatrix::identity(std::size_t vars) {
  std::vector<PowerVector> rows;
  rows.reserve(vars);
  for (std::size_t i = 0; i < vars; ++i) {
    std::vector<int> e(vars, 0);
    e[i] = 1;
    rows.emplace_back(std::move(e));
  }
  return from_rows(vars, rows);
}

PowerVector PowerMatrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return PowerVector(std::vector<int>(r.begin(), r.end()));
}

int PowerMatrix::max_exponent() const noexcept {
  int m = 0;
  for (int e : data_) m = std::max(m, e);
  return m;
}

PowerMatrix PowerMatrix::select_rows(std::span<const std::size_t> indices) const {
  PowerMatrix K(vars_);
  K.data_.reserve(indices.size() * vars_);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    require(indices[k] < rows(), ErrorCode::InvalidInput, "select_rows: index out of range");
    require(k == 0 || indices[k] > indices[k - 1], ErrorCode::InvalidInput,
            "select_rows: indices must be strictly increasing");
    auto r = row(indices[k]);
    K.data_.insert(K.data_.end(), r.begin(), r.end());
  }
  K.bounds_ = bounds_;
  return K;
}

std::size_t PowerMatrix::find(std::span<const int> k) const {
  std::size_t lo = 0;
  std::size_t hi = rows();
  // rows are decreasing: the first row not greater than k is the candidate
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (lex_compare(row(mid), k) == std::strong_ordering::greater) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < rows() && lex_compare(row(lo), k) == std::strong_ordering::equal) return lo;
  return rows();
}

std::size_t bounded_power_count(const PowerVector& k_max) {
  std::size_t count = 1;
  for (std::size_t j = 0; j < k_max.size(); ++j) {
    auto factor = static_cast<std::size_t>(k_max[j]) + 1;
    if (count > std::numeric_limits<std::size_t>::max() / factor) {
      return std::numeric_limits<std::size_t>::max();
    }
    count *= factor;
  }
  return count;
}

PowerMatrix enumerate_power_matrix(const PowerVector& k_max, std::size_t cap) {
  const std::size_t n = k_max.size();
  require(n >= 1, ErrorCode::InvalidInput, "enumerate_power_matrix: need at least one variable");
  const std::size_t count = bounded_power_count(k_max);
  require(count <= cap, ErrorCode::Capacity,
          "bounded power set has " +
              (count == std::numeric_limits<std::size_t>::max() ? std::string("overflowing")
                                                                 : std::to_string(count)) +
              " monomials, above the cap of " + std::to_string(cap));

  PowerMatrix K(n);
  K.data_.resize(count * n);
  // Mixed-radix countdown with the first variable most significant yields
  // decreasing lexicographic order.
  std::vector<int> current(k_max.exponents().begin(), k_max.exponents().end());
  for (std::size_t i = 0; i < count; ++i) {
    std::copy(current.begin(), current.end(), K.data_.begin() + static_cast<std::ptrdiff_t>(i * n));
    for (std::size_t j = n; j-- > 0;) {
      if (current[j] > 0) {
        --current[j];
        break;
      }
      current[j] = k_max[j];
    }
  }
  K.bounds_ = k_max;
  return K;
}

namespace {

void check_finite(std::span<const double> x) {
  for (double v : x) {
    require(std::isfinite(v), ErrorCode::InvalidInput, "monomial evaluation: non-finite input");
  }
}

// powers(j, e) = x(j)^e for e <= max_exp, by repeated multiplication.
void fill_power_table(std::span<const double> x, int max_exp, std::vector<double>& table) {
  const auto stride = static_cast<std::size_t>(max_exp) + 1;
  table.resize(x.size() * stride);
  for (std::size_t j = 0; j < x.size(); ++j) {
    double* p = table.data() + j * stride;
    p[0] = 1.0;
    for (std::size_t e = 1; e < stride; ++e) p[e] = p[e - 1] * x[j];
  }
}

void eval_into(std::span<const double> x, const PowerMatrix& K, const std::vector<double>& table,
               double* out) {
  const auto stride = static_cast<std::size_t>(K.max_exponent()) + 1;
  for (std::size_t i = 0; i < K.rows(); ++i) {
    auto r = K.row(i);
    double v = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (r[j] != 0) v *= table[j * stride + static_cast<std::size_t>(r[j])];
    }
    out[i] = v;
  }
}

}  // namespace

Eigen::VectorXd eval_monomial_vector(std::span<const double> x, const PowerMatrix& K) {
  require(x.size() == K.vars(), ErrorCode::InvalidInput,
          "eval_monomial_vector: input has length " + std::to_string(x.size()) +
              ", power matrix expects " + std::to_string(K.vars()));
  check_finite(x);
  std::vector<double> table;
  fill_power_table(x, K.max_exponent(), table);
  Eigen::VectorXd v(static_cast<Eigen::Index>(K.rows()));
  eval_into(x, K, table, v.data());
  return v;
}

Eigen::VectorXd eval_monomial_vector(const Eigen::VectorXd& x, const PowerMatrix& K) {
  return eval_monomial_vector(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), K);
}

Eigen::MatrixXd build_data_matrix(const Eigen::MatrixXd& samples, const PowerMatrix& K) {
  require(samples.cols() > 0, ErrorCode::InvalidInput, "build_data_matrix: no samples");
  require(static_cast<std::size_t>(samples.rows()) == K.vars(), ErrorCode::InvalidInput,
          "build_data_matrix: samples have dimension " + std::to_string(samples.rows()) +
              ", power matrix expects " + std::to_string(K.vars()));
  Eigen::MatrixXd V(static_cast<Eigen::Index>(K.rows()), samples.cols());
  std::vector<double> table;
  for (Eigen::Index k = 0; k < samples.cols(); ++k) {
    std::span<const double> x(samples.col(k).data(), static_cast<std::size_t>(samples.rows()));
    check_finite(x);
    fill_power_table(x, K.max_exponent(), table);
    eval_into(x, K, table, V.col(k).data());
  }
  return V;
}

std::vector<PowerMatrix> partition_power_matrix(const PowerMatrix& K, std::size_t block_limit) {
  require(block_limit >= 1, ErrorCode::InvalidInput, "partition_power_matrix: block_limit must be >= 1");
  std::vector<PowerVector> order;
  order.reserve(K.rows());
  for (std::size_t i = 0; i < K.rows(); ++i) order.push_back(K.row_vector(i));
  std::stable_sort(order.begin(), order.end(), [](const PowerVector& a, const PowerVector& b) {
    int da = a.total_degree();
    int db = b.total_degree();
    if (da != db) return da < db;
    return lex_compare(a, b) == std::strong_ordering::less;
  });

  std::vector<PowerMatrix> blocks;
  for (std::size_t start = 0; start < order.size(); start += block_limit) {
    std::size_t stop = std::min(order.size(), start + block_limit);
    std::vector<PowerVector> rows(order.begin() + static_cast<std::ptrdiff_t>(start),
                                  order.begin() + static_cast<std::ptrdiff_t>(stop));
    blocks.push_back(PowerMatrix::canonical(K.vars(), std::move(rows)));
  }
  return blocks;
}

PowerMatrix merge_power_matrices(const PowerMatrix& a, const PowerMatrix& b) {
  require(a.vars() == b.vars(), ErrorCode::InvalidInput,
          "merge_power_matrices: variable counts differ");
  std::vector<PowerVector> rows;
  rows.reserve(a.rows() + b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row_vector(i));
  for (std::size_t i = 0; i < b.rows(); ++i) rows.push_back(b.row_vector(i));
  return PowerMatrix::canonical(a.vars(), std::move(rows));
}

}  // namespace subalg
