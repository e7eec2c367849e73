#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "subalg/monomials.hpp"

namespace subalg {

/// Vector polynomial map x ↦ L·x^K. L is outputs × monomials, K has one row
/// per monomial over inputs() variables. A map with no monomials is the zero map.
class MonomialMap {
 public:
  MonomialMap() = default;
  MonomialMap(Eigen::MatrixXd L, PowerMatrix K);

  static MonomialMap zero(std::size_t outputs, std::size_t inputs);
  /// x ↦ x over `vars` variables.
  static MonomialMap identity(std::size_t vars);

  const Eigen::MatrixXd& coefficients() const noexcept { return L_; }
  const PowerMatrix& powers() const noexcept { return K_; }
  std::size_t inputs() const noexcept { return K_.vars(); }
  std::size_t outputs() const noexcept { return static_cast<std::size_t>(L_.rows()); }
  std::size_t terms() const noexcept { return K_.rows(); }

  /// True when no coefficient column is entirely zero.
  bool nontrivial() const;
  MonomialMap without_zero_columns() const;
  /// Output rows at the given indices, in the given order.
  MonomialMap select_outputs(std::span<const std::size_t> rows) const;

  friend bool operator==(const MonomialMap& a, const MonomialMap& b) {
    return a.K_ == b.K_ && a.L_.rows() == b.L_.rows() && a.L_.cols() == b.L_.cols() &&
           a.L_ == b.L_;
  }

 private:
  Eigen::MatrixXd L_;
  PowerMatrix K_;
};

/// L · eval_monomial_vector(x, K).
Eigen::VectorXd eval_monomial_map(const MonomialMap& map, std::span<const double> x);
Eigen::VectorXd eval_monomial_map(const MonomialMap& map, const Eigen::VectorXd& x);
/// Column-wise evaluation over samples (inputs × s).
Eigen::MatrixXd eval_monomial_map_columns(const MonomialMap& map, const Eigen::MatrixXd& samples);

/// y ≈ h(g(u)) with x = g(u) of dimension state_dim().
struct Factorization {
  MonomialMap h;  // outputs from state
  MonomialMap g;  // state from input
  std::size_t state_dim() const noexcept { return g.outputs(); }
};

/// Reduces the linear–polynomial factorization y ≈ C_r·g_r(u) by writing
/// generator components as products of two others plus lower-order
/// generators, fitted on `samples` (inputs × s). Greedy single pass; a
/// candidate is accepted when its relative least-squares residual is <= tol
/// and the reduced factorization stays within tol·(1 + |C_r g_r(u)|_∞) on
/// every sample.
Factorization eliminate_products(const Eigen::MatrixXd& C_r, const MonomialMap& g_r,
                                 const Eigen::MatrixXd& samples, double tol);

/// M'(v) = M((v - offset) ./ scale), expanded back into monomial form.
MonomialMap substitute_affine_inputs(const MonomialMap& map, std::span<const double> offset,
                                     std::span<const double> scale);

}  // namespace subalg
