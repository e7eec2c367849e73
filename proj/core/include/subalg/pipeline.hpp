#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "subalg/model.hpp"
#include "subalg/monomials.hpp"
#include "subalg/numred.hpp"
#include "subalg/series.hpp"

namespace subalg {

struct IdentConfig {
  // truncation thresholds, all in (0,1)
  double r1 = 0.0;  // past lifting SVD
  double r2 = 0.0;  // dynamics SVD
  double r3 = 0.0;  // product-elimination tolerance
  double r4 = 0.0;  // LK-reduction, generators and dynamics

  std::size_t t_plus_min = 1;
  std::size_t t_minus_min = 1;
  std::size_t t_plus_max = 8;
  std::size_t t_minus_max = 8;

  PowerVector k_max_y{1};   // per output dimension, replicated over lags
  PowerVector k_max_x{1};   // length 1 (broadcast) or n
  PowerVector k_max_y2{1};  // per output dimension, dynamics lifting

  std::size_t block_limit = 500;
  std::optional<std::size_t> anchor_t;
  std::optional<bool> pool_windows;  // unset: pool when s < 4·d_v⁻
  bool scaling = true;
  std::size_t monomial_cap = kDefaultMonomialCap;

  /// Throws InvalidInput on thresholds outside (0,1) or inverted horizons.
  void validate() const;
};

/// Horizon maxima suggested for an expected state dimension: four times it.
std::size_t default_horizon(std::size_t expected_state_dim);

struct WindowVectors {
  Eigen::MatrixXd y_plus;   // d_y·t⁺ × s
  Eigen::MatrixXd y_minus;  // d_y·t⁻ × s
};

/// Future and past stacks of every series at time t.
WindowVectors build_window_vectors(const TimeSeriesSet& ts, std::size_t t, std::size_t t_plus,
                                   std::size_t t_minus);

/// Past power matrix: k_max_y replicated over t_minus lags, full enumeration.
PowerMatrix past_power_matrix(const PowerVector& k_max_y, std::size_t t_minus,
                              std::size_t cap = kDefaultMonomialCap);

/// The bottom d_y rows of a future stack hold y(t).
Eigen::MatrixXd project_current_output(const Eigen::MatrixXd& y_plus, std::size_t d_y);

struct BlockIteration {
  std::size_t t_plus = 0;
  std::size_t t_minus = 0;
  std::size_t block = 0;            // 1-based within the horizon
  std::size_t blocks = 0;
  std::size_t generators_in = 0;    // monomials entering the past SVD
  std::size_t generators_kept = 0;  // after LK-reduction
  std::size_t n1 = 0;
  std::size_t columns = 0;
  bool pooled = false;
  TruncationTable table1;
  double discarded_fraction = 0.0;
};

struct IdentDiagnostics {
  std::size_t t_plus = 0;
  std::size_t t_minus = 0;
  std::size_t anchor_t = 0;
  bool pooled = false;
  bool plateau_stop = false;
  std::vector<BlockIteration> iterations;
  TruncationTable table2;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t state_dim = 0;
  std::size_t past_monomials = 0;           // full bounded set at the final horizon
  std::size_t generators_after_lk = 0;
  std::size_t generators_before_elimination = 0;  // state coordinates before product elimination
  std::size_t generators_after_elimination = 0;
  std::size_t dynamics_monomials = 0;
  std::size_t dynamics_terms = 0;           // after LK-reduction
  std::size_t output_terms = 0;             // h_o monomials
  double past_fit_relative_residual = 0.0;  // |V⁺ - C L V⁻|_F / |V⁺|_F
  Eigen::VectorXd training_rms;             // per series, replay from the anchor
  Eigen::VectorXd training_rmse;            // per output dimension
  Eigen::VectorXd training_relative_rmse;
  IdentConfig config;                       // as applied
};

struct IdentResult {
  ObserverModel model;
  IdentDiagnostics diagnostics;
};

/// Subalgebraic identification of an output-driven polynomial observer from
/// a set of output time series.
IdentResult identify(const TimeSeriesSet& ts, const IdentConfig& cfg);

}  // namespace subalg
