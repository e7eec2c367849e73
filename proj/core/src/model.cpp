#include "subalg/model.hpp"

#include <cmath>
#include <string>

#include "subalg/error.hpp"

namespace subalg {

OutputScaling OutputScaling::fit(const TimeSeriesSet& ts) {
  ts.validate();
  const auto d = static_cast<Eigen::Index>(ts.dim());
  OutputScaling s;
  s.offset = Eigen::VectorXd::Zero(d);
  double samples = 0.0;
  for (std::size_t k = 0; k < ts.count(); ++k) {
    s.offset += ts.series(k).rowwise().sum();
    samples += static_cast<double>(ts.length());
  }
  s.offset /= samples;
  s.scale = Eigen::VectorXd::Zero(d);
  for (std::size_t k = 0; k < ts.count(); ++k) {
    Eigen::VectorXd spread =
        (ts.series(k).colwise() - s.offset).cwiseAbs().rowwise().maxCoeff();
    s.scale = s.scale.cwiseMax(spread);
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    if (s.scale(i) == 0.0) s.scale(i) = 1.0;
  }
  return s;
}

Eigen::VectorXd OutputScaling::apply(const Eigen::VectorXd& y) const {
  return (y - offset).cwiseQuotient(scale);
}

Eigen::VectorXd OutputScaling::invert(const Eigen::VectorXd& z) const {
  return z.cwiseProduct(scale) + offset;
}

TimeSeriesSet OutputScaling::apply(const TimeSeriesSet& ts) const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(ts.count());
  for (std::size_t k = 0; k < ts.count(); ++k) {
    out.emplace_back((ts.series(k).colwise() - offset).array().colwise() / scale.array());
  }
  return TimeSeriesSet(std::move(out));
}

bool operator==(const ObserverModel& a, const ObserverModel& b) {
  return a.n == b.n && a.d_y == b.d_y && a.f_o == b.f_o && a.h_o == b.h_o &&
         a.x0.rows() == b.x0.rows() && a.x0.cols() == b.x0.cols() && a.x0 == b.x0 &&
         a.scaling == b.scaling && a.g_io == b.g_io && a.provenance == b.provenance;
}

namespace {

void check_map(const MonomialMap& map, std::size_t inputs, std::size_t outputs, const char* name) {
  require(map.inputs() == inputs && map.outputs() == outputs, ErrorCode::Validation,
          std::string(name) + " must map " + std::to_string(inputs) + " inputs to " +
              std::to_string(outputs) + " outputs, found " + std::to_string(map.inputs()) +
              " -> " + std::to_string(map.outputs()));
  require(map.coefficients().allFinite(), ErrorCode::Validation,
          std::string(name) + " has non-finite coefficients");
  require(map.nontrivial(), ErrorCode::Validation,
          std::string(name) + " has an all-zero coefficient column");
}

}  // namespace

void validate(const ObserverModel& model) {
  require(model.n >= 1 && model.d_y >= 1, ErrorCode::Validation,
          "model needs n >= 1 and d_y >= 1");
  check_map(model.f_o, model.n + model.d_y, model.n, "f_o");
  require(model.f_o.terms() >= 1, ErrorCode::Validation, "f_o has no monomials");
  check_map(model.h_o, model.n, model.d_y, "h_o");
  require(static_cast<std::size_t>(model.x0.rows()) == model.n || model.x0.size() == 0,
          ErrorCode::Validation, "x0 must have n rows");
  require(model.x0.allFinite(), ErrorCode::Validation, "x0 has non-finite entries");
  if (model.scaling) {
    const auto& s = *model.scaling;
    require(static_cast<std::size_t>(s.offset.size()) == model.d_y &&
                static_cast<std::size_t>(s.scale.size()) == model.d_y,
            ErrorCode::Validation, "scaling must have d_y entries");
    require(s.offset.allFinite() && s.scale.allFinite() && (s.scale.array() != 0.0).all(),
            ErrorCode::Validation, "scaling entries must be finite with nonzero scale");
  }
  if (model.g_io) {
    require(model.g_io->t_minus >= 1, ErrorCode::Validation, "g_io needs t_minus >= 1");
    check_map(model.g_io->g, model.g_io->t_minus * model.d_y, model.n, "g_io");
  }
}

namespace {

void check_shapes(const ObserverModel& model, const TimeSeriesSet& ts) {
  require(ts.dim() == model.d_y, ErrorCode::DimMismatch,
          "data has output dimension " + std::to_string(ts.dim()) + ", model expects " +
              std::to_string(model.d_y));
  require(model.f_o.inputs() == model.n + model.d_y && model.f_o.outputs() == model.n &&
              model.h_o.inputs() == model.n && model.h_o.outputs() == model.d_y,
          ErrorCode::DimMismatch, "model maps have inconsistent arities");
}

}  // namespace

PredictionReport predict_one_step(const ObserverModel& model, const TimeSeriesSet& ts,
                                  const Eigen::MatrixXd& x0, std::size_t first_t, double guard) {
  check_shapes(model, ts);
  require(static_cast<std::size_t>(x0.rows()) == model.n &&
              static_cast<std::size_t>(x0.cols()) == ts.count(),
          ErrorCode::DimMismatch,
          "initial states must be " + std::to_string(model.n) + " x " +
              std::to_string(ts.count()) + ", got " + std::to_string(x0.rows()) + " x " +
              std::to_string(x0.cols()));
  require(first_t >= 1 && first_t <= ts.length(), ErrorCode::InvalidInput,
          "prediction start time out of range");

  const auto n = static_cast<Eigen::Index>(model.n);
  const auto d = static_cast<Eigen::Index>(model.d_y);
  const std::size_t steps = ts.length() - first_t + 1;

  PredictionReport report;
  report.series.resize(ts.count());
  Eigen::VectorXd xy(n + d);
  for (std::size_t k = 0; k < ts.count(); ++k) {
    SeriesPrediction& out = report.series[k];
    out.first_t = first_t;
    out.predicted.resize(d, static_cast<Eigen::Index>(steps));
    out.residual.resize(d, static_cast<Eigen::Index>(steps));
    Eigen::VectorXd x = x0.col(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < steps; ++i) {
      const std::size_t t = first_t + i;
      Eigen::VectorXd y = ts.at(t, k);
      Eigen::VectorXd z = model.scaling ? model.scaling->apply(y) : y;
      Eigen::VectorXd yhat = eval_monomial_map(model.h_o, x);
      if (model.scaling) yhat = model.scaling->invert(yhat);
      out.predicted.col(static_cast<Eigen::Index>(i)) = yhat;
      out.residual.col(static_cast<Eigen::Index>(i)) = y - yhat;
      if (i + 1 == steps) break;
      xy << x, z;
      x = eval_monomial_map(model.f_o, xy);
      const bool bounded = x.allFinite() && x.cwiseAbs().maxCoeff() <= guard;
      require(bounded, ErrorCode::Divergence,
              "observer state diverged on series " + std::to_string(k + 1) + " at t=" +
                  std::to_string(t + 1));
    }
  }
  summarize(report, ts);
  return report;
}

void summarize(PredictionReport& report, const TimeSeriesSet& ts) {
  const auto d = static_cast<Eigen::Index>(ts.dim());
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(d);
  double count = 0.0;
  for (std::size_t k = 0; k < report.series.size(); ++k) {
    const auto& s = report.series[k];
    for (Eigen::Index i = 0; i < s.residual.cols(); ++i) {
      Eigen::VectorXd y = ts.at(s.first_t + static_cast<std::size_t>(i), k);
      sq += s.residual.col(i).cwiseAbs2();
      sum += y;
      sum_sq += y.cwiseAbs2();
      count += 1.0;
    }
  }
  report.rmse = (sq / std::max(count, 1.0)).cwiseSqrt();
  report.output_std = Eigen::VectorXd::Zero(d);
  if (count > 1.0) {
    Eigen::VectorXd mean = sum / count;
    Eigen::VectorXd var = (sum_sq - count * mean.cwiseAbs2()) / (count - 1.0);
    report.output_std = var.cwiseMax(0.0).cwiseSqrt();
  }
  report.relative_rmse = report.rmse;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (report.output_std(i) > 0.0) report.relative_rmse(i) = report.rmse(i) / report.output_std(i);
  }
}

Eigen::MatrixXd initial_states_from_past(const ObserverModel& model, const TimeSeriesSet& ts) {
  check_shapes(model, ts);
  require(model.g_io.has_value(), ErrorCode::Validation,
          "model has no past-output map g_io; initial states must be supplied");
  const std::size_t t_minus = model.g_io->t_minus;
  require(ts.length() > t_minus, ErrorCode::InvalidInput,
          "series of length " + std::to_string(ts.length()) + " is too short for " +
              std::to_string(t_minus) + " past samples");
  const TimeSeriesSet scaled = model.scaling ? model.scaling->apply(ts) : ts;
  Eigen::MatrixXd past(static_cast<Eigen::Index>(t_minus * ts.dim()),
                       static_cast<Eigen::Index>(ts.count()));
  for (std::size_t k = 0; k < ts.count(); ++k) {
    past.col(static_cast<Eigen::Index>(k)) = past_window(scaled, t_minus + 1, t_minus, k);
  }
  return eval_monomial_map_columns(model.g_io->g, past);
}

PredictionReport predict_from_past(const ObserverModel& model, const TimeSeriesSet& ts,
                                   double guard) {
  Eigen::MatrixXd x0 = initial_states_from_past(model, ts);
  return predict_one_step(model, ts, x0, model.g_io->t_minus + 1, guard);
}

namespace {

// y = scale ⊙ h(x) + offset as a monomial map.
MonomialMap affine_outputs(const MonomialMap& h, const OutputScaling& s) {
  const std::size_t n = h.inputs();
  std::vector<PowerVector> rows;
  for (std::size_t i = 0; i < h.terms(); ++i) rows.push_back(h.powers().row_vector(i));
  rows.push_back(PowerVector::uniform(n, 0));
  PowerMatrix K = PowerMatrix::canonical(n, std::move(rows));
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(h.outputs()),
                                            static_cast<Eigen::Index>(K.rows()));
  for (std::size_t i = 0; i < h.terms(); ++i) {
    L.col(static_cast<Eigen::Index>(K.find(h.powers().row(i)))) =
        s.scale.cwiseProduct(h.coefficients().col(static_cast<Eigen::Index>(i)));
  }
  const std::vector<int> constant(n, 0);
  L.col(static_cast<Eigen::Index>(K.find(constant))) += s.offset;
  return MonomialMap(std::move(L), std::move(K)).without_zero_columns();
}

}  // namespace

ObserverModel unscaled_equivalent(const ObserverModel& model) {
  if (!model.scaling) return model;
  const OutputScaling& s = *model.scaling;
  ObserverModel out = model;
  out.scaling.reset();

  std::vector<double> offset(model.n, 0.0);
  std::vector<double> scale(model.n, 1.0);
  for (std::size_t i = 0; i < model.d_y; ++i) {
    offset.push_back(s.offset(static_cast<Eigen::Index>(i)));
    scale.push_back(s.scale(static_cast<Eigen::Index>(i)));
  }
  out.f_o = substitute_affine_inputs(model.f_o, offset, scale);
  out.h_o = affine_outputs(model.h_o, s);

  if (model.g_io) {
    std::vector<double> past_offset;
    std::vector<double> past_scale;
    for (std::size_t lag = 0; lag < model.g_io->t_minus; ++lag) {
      for (std::size_t i = 0; i < model.d_y; ++i) {
        past_offset.push_back(s.offset(static_cast<Eigen::Index>(i)));
        past_scale.push_back(s.scale(static_cast<Eigen::Index>(i)));
      }
    }
    out.g_io->g = substitute_affine_inputs(model.g_io->g, past_offset, past_scale);
  }
  return out;
}

}  // namespace subalg
