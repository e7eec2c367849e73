#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "subalg/monomials.hpp"

namespace subalg {

struct TruncationEntry {
  std::size_t index;           // 1-based
  double cumulative_fraction;  // Σ_{i<=index} D_i / Σ D_i
};

using TruncationTable = std::vector<TruncationEntry>;

struct DiagonalTruncation {
  std::size_t rank = 0;       // n_r
  Eigen::VectorXd truncated;  // D_r: first n_r entries of D, zeros after
  TruncationTable table;
};

/// l1-norm truncation of a nonincreasing nonnegative diagonal: n_r is the
/// smallest j whose cumulative fraction reaches r.
DiagonalTruncation mdtrunc(std::span<const double> diagonal, double r);

struct SvdTruncResult {
  std::size_t n = 0;          // retained rank
  Eigen::VectorXd D_n;        // retained singular values, descending
  Eigen::MatrixXd C;          // d_vy × n
  Eigen::MatrixXd L;          // n × d_vu
  Eigen::MatrixXd X;          // n × s, equals L·V_u
  Eigen::MatrixXd H_star;     // d_vy × d_vu, equals C·L
  TruncationTable table;      // over the numerically positive singular values
  Eigen::VectorXd singular_values;  // full spectrum of V_u

  /// Fraction of singular-value l1 mass that was discarded.
  double discarded_fraction() const;
};

/// Singular values at or below this multiple of σ_max·max(rows, cols) are
/// treated as zero.
inline constexpr double kSingularValueFloor = 1e-12;

/// MapOnly skips L and X and forms H* directly, for wide monomial matrices
/// where only the map is needed.
enum class SvdTruncOutput { Full, MapOnly };

/// Best-fit linear map V_y ≈ H*·V_u through a truncated pseudoinverse of V_u,
/// factored as H* = C·L with L the leading left singular vectors of V_u.
SvdTruncResult svd_trunc(const Eigen::MatrixXd& V_y, const Eigen::MatrixXd& V_u, double r,
                         SvdTruncOutput output = SvdTruncOutput::Full);

struct LkReduction {
  Eigen::MatrixXd L;
  PowerMatrix K;
  std::vector<std::size_t> kept;
};

/// Drops column j of L (and row j of K) when its l1 norm is <= r times the
/// largest column l1 norm of the input matrix.
LkReduction lk_reduce(const Eigen::MatrixXd& L, const PowerMatrix& K, double r);

/// Two-column text rendering: index and cumulative fraction (6 significant digits).
std::string format_truncation_table(const TruncationTable& table);

}  // namespace subalg
