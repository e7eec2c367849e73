#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "subalg/genred.hpp"
#include "subalg/series.hpp"

namespace subalg {

/// Per-dimension affine output transform z = (y - offset) ./ scale.
struct OutputScaling {
  Eigen::VectorXd offset;
  Eigen::VectorXd scale;

  /// offset = mean over every sample, scale = largest |y - mean| (1 when the
  /// dimension is constant), so scaled data lies in [-1, 1].
  static OutputScaling fit(const TimeSeriesSet& ts);

  Eigen::VectorXd apply(const Eigen::VectorXd& y) const;
  Eigen::VectorXd invert(const Eigen::VectorXd& z) const;
  TimeSeriesSet apply(const TimeSeriesSet& ts) const;

  friend bool operator==(const OutputScaling& a, const OutputScaling& b) {
    return a.offset.size() == b.offset.size() && a.scale.size() == b.scale.size() &&
           a.offset == b.offset && a.scale == b.scale;
  }
};

/// x(t) = g(y⁻(t)) with y⁻(t) = (y(t-1); ...; y(t-t_minus)) in scaled units.
struct PastMap {
  std::size_t t_minus = 0;
  MonomialMap g;

  friend bool operator==(const PastMap&, const PastMap&) = default;
};

/// Output-driven observer x(t+1) = f_o(x(t), y(t)), ŷ(t|t-1) = h_o(x(t)).
/// When `scaling` is present f_o, h_o and g_io act on scaled outputs.
struct ObserverModel {
  std::size_t n = 0;
  std::size_t d_y = 0;
  MonomialMap f_o;  // n + d_y inputs, n outputs
  MonomialMap h_o;  // n inputs, d_y outputs
  Eigen::MatrixXd x0;  // n × s initial states of the training series
  std::optional<OutputScaling> scaling;
  std::optional<PastMap> g_io;
  std::map<std::string, std::string> provenance;

  friend bool operator==(const ObserverModel& a, const ObserverModel& b);
};

/// Throws Validation on any arity, finiteness or nontriviality violation and
/// on an f_o without monomials.
void validate(const ObserverModel& model);

struct SeriesPrediction {
  std::size_t first_t = 1;    // time of the first prediction
  Eigen::MatrixXd predicted;  // d_y × steps, raw units
  Eigen::MatrixXd residual;   // measured minus predicted
};

struct PredictionReport {
  std::vector<SeriesPrediction> series;
  Eigen::VectorXd rmse;           // per output dimension
  Eigen::VectorXd output_std;     // sample std of the measured outputs predicted
  Eigen::VectorXd relative_rmse;  // rmse / output_std (rmse when the std is 0)
};

inline constexpr double kDivergenceGuard = 1e12;

/// Runs the observer on every series from x(first_t) = x0.col(k), feeding the
/// measured y(t) into f_o. Throws DimMismatch on shape errors and Divergence
/// when a state coordinate leaves [-guard, guard].
PredictionReport predict_one_step(const ObserverModel& model, const TimeSeriesSet& ts,
                                  const Eigen::MatrixXd& x0, std::size_t first_t = 1,
                                  double guard = kDivergenceGuard);

/// x(t_minus + 1) = g_io(y(t_minus), ..., y(1)) for every series. Requires g_io.
Eigen::MatrixXd initial_states_from_past(const ObserverModel& model, const TimeSeriesSet& ts);

/// predict_one_step starting at t_minus + 1 from initial_states_from_past.
PredictionReport predict_from_past(const ObserverModel& model, const TimeSeriesSet& ts,
                                   double guard = kDivergenceGuard);

/// Same input/output behaviour with the scaling folded into the polynomials.
ObserverModel unscaled_equivalent(const ObserverModel& model);

/// Aggregates per-series predictions into RMSE figures.
void summarize(PredictionReport& report, const TimeSeriesSet& ts);

/// JSON model document; coefficients are written with round-trip precision.
std::string serialize_model(const ObserverModel& model);
/// Throws Parse (with byte offset or JSON path) or Validation.
ObserverModel deserialize_model(std::string_view document);

}  // namespace subalg
