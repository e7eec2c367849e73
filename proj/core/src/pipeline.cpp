#include "subalg/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "subalg/error.hpp"
#include "subalg/genred.hpp"

namespace subalg {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_powers(const PowerVector& k) {
  std::string out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(k[i]);
  }
  return out;
}

PowerVector broadcast(const PowerVector& k, std::size_t size, const char* name) {
  if (k.size() == size) return k;
  require(k.size() == 1, ErrorCode::InvalidInput,
          std::string(name) + " has " + std::to_string(k.size()) + " entries, expected 1 or " +
              std::to_string(size));
  return PowerVector::uniform(size, k[0]);
}

void require_finite(const Eigen::MatrixXd& M, const char* step) {
  require(M.allFinite(), ErrorCode::NumericalOverflow,
          std::string(step) + ": non-finite values in the data matrix; enable output scaling or "
                              "lower the exponent bounds");
}

// Capacity errors from enumeration get the step name prepended.
PowerMatrix enumerate_for(const PowerVector& k_max, std::size_t cap, const char* step) {
  try {
    return enumerate_power_matrix(k_max, cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Capacity) throw;
    fail(ErrorCode::Capacity, std::string(step) + ": " + e.what());
  }
}

// Anchors whose windows are used as data columns, outer loop over time.
std::vector<std::size_t> column_anchors(std::size_t t1, std::size_t t_plus, std::size_t t_minus,
                                        std::size_t anchor, bool pooled) {
  if (!pooled) return {anchor};
  std::vector<std::size_t> out;
  for (std::size_t t = t_minus + 1; t + t_plus - 1 <= t1; ++t) out.push_back(t);
  return out;
}

struct Windows {
  Eigen::MatrixXd plus;        // y⁺(t')
  Eigen::MatrixXd minus;       // y⁻(t')
  Eigen::MatrixXd minus_next;  // y⁻(t'+1)
  Eigen::MatrixXd current;     // y(t')
};

Windows pooled_windows(const TimeSeriesSet& z, const std::vector<std::size_t>& anchors,
                       std::size_t t_plus, std::size_t t_minus) {
  const auto d = static_cast<Eigen::Index>(z.dim());
  const auto cols = static_cast<Eigen::Index>(anchors.size() * z.count());
  Windows w;
  w.plus.resize(d * static_cast<Eigen::Index>(t_plus), cols);
  w.minus.resize(d * static_cast<Eigen::Index>(t_minus), cols);
  w.minus_next.resize(d * static_cast<Eigen::Index>(t_minus), cols);
  w.current.resize(d, cols);
  Eigen::Index c = 0;
  for (std::size_t t : anchors) {
    for (std::size_t k = 0; k < z.count(); ++k, ++c) {
      w.plus.col(c) = future_window(z, t, t_plus, k);
      w.minus.col(c) = past_window(z, t, t_minus, k);
      w.minus_next.col(c) = past_window(z, t + 1, t_minus, k);
      w.current.col(c) = z.at(t, k);
    }
  }
  return w;
}

void require_columns(std::size_t columns, std::size_t rank, const char* step,
                     const TruncationTable& table) {
  require(columns > rank, ErrorCode::RankDeficiency,
          std::string(step) + ": " + std::to_string(columns) +
              " data columns do not exceed the retained rank " + std::to_string(rank) +
              "; supply more series or enable window pooling\n" + format_truncation_table(table));
}

struct HorizonFit {
  std::size_t t_plus = 0;
  std::size_t t_minus = 0;
  bool pooled = false;
  std::vector<std::size_t> anchors;
  Windows windows;
  std::size_t past_monomials = 0;
  std::size_t n1 = 0;
  Eigen::MatrixXd C;  // d_y·t⁺ × n1
  MonomialMap g;      // (L_g, K_g)
  double residual = 0.0;
};

// Windows, past lifting, block loop and LK-reduction at one horizon pair.
HorizonFit fit_horizon(const TimeSeriesSet& z, const IdentConfig& cfg, const PowerVector& k_max_y,
                       std::size_t t_plus, std::size_t t_minus, std::size_t anchor,
                       std::vector<BlockIteration>& log) {
  HorizonFit fit;
  fit.t_plus = t_plus;
  fit.t_minus = t_minus;

  const PowerVector k_past = k_max_y.repeat(t_minus);
  const std::size_t d_v = bounded_power_count(k_past);
  fit.pooled = cfg.pool_windows.value_or(d_v == SIZE_MAX || z.count() < 4 * d_v);
  fit.anchors = column_anchors(z.length(), t_plus, t_minus, anchor, fit.pooled);
  fit.windows = pooled_windows(z, fit.anchors, t_plus, t_minus);

  const PowerMatrix K_past = enumerate_for(k_past, cfg.monomial_cap, "past lifting");
  fit.past_monomials = K_past.rows();
  const std::vector<PowerMatrix> blocks = partition_power_matrix(K_past, cfg.block_limit);
  const auto columns = static_cast<std::size_t>(fit.windows.minus.cols());

  PowerMatrix K = blocks.front();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Eigen::MatrixXd V_minus = build_data_matrix(fit.windows.minus, K);
    require_finite(V_minus, "past lifting");
    SvdTruncResult svd = svd_trunc(fit.windows.plus, V_minus, cfg.r1);
    require_columns(columns, svd.n, "past factorization", svd.table);
    LkReduction lk = lk_reduce(svd.L, K, cfg.r4);
    require(!lk.K.empty(), ErrorCode::DegenerateModel,
            "LK-reduction of the past factorization removed every generator");

    BlockIteration it;
    it.t_plus = t_plus;
    it.t_minus = t_minus;
    it.block = b + 1;
    it.blocks = blocks.size();
    it.generators_in = K.rows();
    it.generators_kept = lk.K.rows();
    it.n1 = svd.n;
    it.columns = columns;
    it.pooled = fit.pooled;
    it.table1 = svd.table;
    it.discarded_fraction = svd.discarded_fraction();
    log.push_back(std::move(it));

    if (b + 1 == blocks.size()) {
      fit.n1 = svd.n;
      const double norm = fit.windows.plus.norm();
      const Eigen::MatrixXd miss = fit.windows.plus - svd.C * svd.X;
      fit.residual = norm > 0.0 ? miss.norm() / norm : miss.norm();
      fit.C = std::move(svd.C);
      fit.g = MonomialMap(std::move(lk.L), std::move(lk.K));
    } else {
      K = merge_power_matrices(lk.K, blocks[b + 1]);
    }
  }
  return fit;
}

}  // namespace

void IdentConfig::validate() const {
  const double r[] = {r1, r2, r3, r4};
  for (int i = 0; i < 4; ++i) {
    require(r[i] > 0.0 && r[i] < 1.0, ErrorCode::InvalidInput,
            "r" + std::to_string(i + 1) + " must lie in (0,1), got " + fmt_double(r[i]));
  }
  require(t_plus_min >= 1 && t_minus_min >= 1, ErrorCode::InvalidInput,
          "horizon minima must be positive");
  require(t_plus_min <= t_plus_max && t_minus_min <= t_minus_max, ErrorCode::InvalidInput,
          "horizon minima must not exceed the maxima");
  require(k_max_y.size() >= 1 && k_max_x.size() >= 1 && k_max_y2.size() >= 1,
          ErrorCode::InvalidInput, "exponent bounds must not be empty");
  require(block_limit >= 1, ErrorCode::InvalidInput, "block_limit must be positive");
  require(!anchor_t || *anchor_t >= 1, ErrorCode::InvalidInput, "anchor_t must be positive");
  require(monomial_cap >= 1, ErrorCode::InvalidInput, "monomial_cap must be positive");
}

std::size_t default_horizon(std::size_t expected_state_dim) { return 4 * expected_state_dim; }

WindowVectors build_window_vectors(const TimeSeriesSet& ts, std::size_t t, std::size_t t_plus,
                                   std::size_t t_minus) {
  require(t_plus >= 1 && t_minus >= 1 && t > t_minus && t + t_plus - 1 <= ts.length(),
          ErrorCode::InvalidInput,
          "windows (t+=" + std::to_string(t_plus) + ", t-=" + std::to_string(t_minus) +
              ") at t=" + std::to_string(t) + " exceed the series bounds 1.." +
              std::to_string(ts.length()));
  const auto d = static_cast<Eigen::Index>(ts.dim());
  const auto s = static_cast<Eigen::Index>(ts.count());
  WindowVectors w{Eigen::MatrixXd(d * static_cast<Eigen::Index>(t_plus), s),
                  Eigen::MatrixXd(d * static_cast<Eigen::Index>(t_minus), s)};
  for (std::size_t k = 0; k < ts.count(); ++k) {
    w.y_plus.col(static_cast<Eigen::Index>(k)) = future_window(ts, t, t_plus, k);
    w.y_minus.col(static_cast<Eigen::Index>(k)) = past_window(ts, t, t_minus, k);
  }
  return w;
}

PowerMatrix past_power_matrix(const PowerVector& k_max_y, std::size_t t_minus, std::size_t cap) {
  return enumerate_power_matrix(k_max_y.repeat(t_minus), cap);
}

Eigen::MatrixXd project_current_output(const Eigen::MatrixXd& y_plus, std::size_t d_y) {
  require(d_y >= 1 && static_cast<std::size_t>(y_plus.rows()) >= d_y &&
              y_plus.rows() % static_cast<Eigen::Index>(d_y) == 0,
          ErrorCode::InvalidInput, "future stack height is not a multiple of d_y");
  return y_plus.bottomRows(static_cast<Eigen::Index>(d_y));
}

IdentResult identify(const TimeSeriesSet& ts, const IdentConfig& cfg) {
  cfg.validate();
  ts.validate();
  const std::size_t d_y = ts.dim();
  const std::size_t t1 = ts.length();
  const PowerVector k_max_y = broadcast(cfg.k_max_y, d_y, "k_max_y");
  const PowerVector k_max_y2 = broadcast(cfg.k_max_y2, d_y, "k_max_y2");

  const std::size_t anchor = cfg.anchor_t.value_or(cfg.t_minus_max + 1);
  require(anchor > cfg.t_minus_max, ErrorCode::InvalidInput,
          "anchor_t=" + std::to_string(anchor) + " leaves no room for t_minus_max=" +
              std::to_string(cfg.t_minus_max) + " past samples");
  require(2 * anchor <= t1, ErrorCode::InvalidInput,
          "anchor_t=" + std::to_string(anchor) + " exceeds t_1/2 with t_1=" + std::to_string(t1));
  require(anchor + cfg.t_plus_max - 1 <= t1, ErrorCode::InvalidInput,
          "future horizon t_plus_max=" + std::to_string(cfg.t_plus_max) +
              " does not fit after anchor_t=" + std::to_string(anchor));

  IdentResult result;
  IdentDiagnostics& diag = result.diagnostics;
  diag.config = cfg;
  diag.anchor_t = anchor;

  std::optional<OutputScaling> scaling;
  if (cfg.scaling) scaling = OutputScaling::fit(ts);
  const TimeSeriesSet z = scaling ? scaling->apply(ts) : ts;

  // Levinson-like outer loop, steps 1-6 per horizon pair.
  std::size_t t_plus = cfg.t_plus_min;
  std::size_t t_minus = cfg.t_minus_min;
  std::vector<std::size_t> n1_history;
  HorizonFit fit;
  for (;;) {
    fit = fit_horizon(z, cfg, k_max_y, t_plus, t_minus, anchor, diag.iterations);
    n1_history.push_back(fit.n1);
    const std::size_t m = n1_history.size();
    if (m >= 3 && n1_history[m - 1] == n1_history[m - 2] && n1_history[m - 2] == n1_history[m - 3]) {
      diag.plateau_stop = !(t_plus == cfg.t_plus_max && t_minus == cfg.t_minus_max);
      break;
    }
    if (t_plus == cfg.t_plus_max && t_minus == cfg.t_minus_max) break;
    t_plus = std::min(t_plus + 1, cfg.t_plus_max);
    t_minus = std::min(t_minus + 1, cfg.t_minus_max);
  }
  diag.t_plus = fit.t_plus;
  diag.t_minus = fit.t_minus;
  diag.pooled = fit.pooled;
  diag.n1 = fit.n1;
  diag.past_monomials = fit.past_monomials;
  diag.generators_after_lk = fit.g.terms();
  diag.generators_before_elimination = fit.g.outputs();
  diag.past_fit_relative_residual = fit.residual;

  // drop generators that are products of others
  Factorization fac = eliminate_products(fit.C, fit.g, fit.windows.minus, cfg.r3);
  const std::size_t n = fac.state_dim();
  require(n >= 1 && fac.g.terms() >= 1, ErrorCode::DegenerateModel,
          "generator reduction left an empty state");
  diag.generators_after_elimination = n;
  diag.state_dim = n;

  // output map: y(t) is the bottom block of the future stack
  std::vector<std::size_t> bottom(d_y);
  for (std::size_t i = 0; i < d_y; ++i) bottom[i] = d_y * (fit.t_plus - 1) + i;
  MonomialMap h_o = fac.h.select_outputs(bottom).without_zero_columns();
  diag.output_terms = h_o.terms();

  // states now and one step later
  const Eigen::MatrixXd X = eval_monomial_map_columns(fac.g, fit.windows.minus);
  const Eigen::MatrixXd X_next = eval_monomial_map_columns(fac.g, fit.windows.minus_next);
  require_finite(X, "state evaluation");
  require_finite(X_next, "state evaluation");

  const PowerVector k_max_x = broadcast(cfg.k_max_x, n, "k_max_x");
  const PowerMatrix K_xy = enumerate_for(k_max_x.concat(k_max_y2), cfg.monomial_cap,
                                         "(x,y) lifting");
  Eigen::MatrixXd samples_xy(static_cast<Eigen::Index>(n + d_y), X.cols());
  samples_xy << X, fit.windows.current;
  const Eigen::MatrixXd V_xy = build_data_matrix(samples_xy, K_xy);
  require_finite(V_xy, "(x,y) lifting");
  diag.dynamics_monomials = K_xy.rows();

  const SvdTruncResult dyn = svd_trunc(X_next, V_xy, cfg.r2, SvdTruncOutput::MapOnly);
  require_columns(static_cast<std::size_t>(V_xy.cols()), dyn.n, "dynamics regression", dyn.table);
  diag.n2 = dyn.n;
  diag.table2 = dyn.table;

  LkReduction lk = lk_reduce(dyn.H_star, K_xy, cfg.r4);
  require(!lk.K.empty(), ErrorCode::DegenerateModel,
          "LK-reduction of the dynamics removed every monomial");
  MonomialMap f_o = MonomialMap(std::move(lk.L), std::move(lk.K)).without_zero_columns();
  require(f_o.terms() >= 1, ErrorCode::DegenerateModel, "identified dynamics are identically zero");
  diag.dynamics_terms = f_o.terms();

  // initial states at the anchor
  Eigen::MatrixXd past_at_anchor(static_cast<Eigen::Index>(d_y * fit.t_minus),
                                 static_cast<Eigen::Index>(ts.count()));
  for (std::size_t k = 0; k < ts.count(); ++k) {
    past_at_anchor.col(static_cast<Eigen::Index>(k)) = past_window(z, anchor, fit.t_minus, k);
  }

  ObserverModel& model = result.model;
  model.n = n;
  model.d_y = d_y;
  model.f_o = std::move(f_o);
  model.h_o = std::move(h_o);
  model.x0 = eval_monomial_map_columns(fac.g, past_at_anchor);
  model.scaling = scaling;
  model.g_io = PastMap{fit.t_minus, fac.g};
  model.provenance = {
      {"method", "subalgebraic"},
      {"t_plus", std::to_string(fit.t_plus)},
      {"t_minus", std::to_string(fit.t_minus)},
      {"anchor_t", std::to_string(anchor)},
      {"pooled", fit.pooled ? "true" : "false"},
      {"r1", fmt_double(cfg.r1)},
      {"r2", fmt_double(cfg.r2)},
      {"r3", fmt_double(cfg.r3)},
      {"r4", fmt_double(cfg.r4)},
      {"k_max_y", fmt_powers(k_max_y)},
      {"k_max_x", fmt_powers(k_max_x)},
      {"k_max_y2", fmt_powers(k_max_y2)},
      {"scaling", cfg.scaling ? "true" : "false"},
  };
  validate(model);

  const PredictionReport replay = predict_one_step(model, ts, model.x0, anchor);
  diag.training_rms.resize(static_cast<Eigen::Index>(ts.count()));
  for (std::size_t k = 0; k < ts.count(); ++k) {
    const Eigen::MatrixXd& r = replay.series[k].residual;
    diag.training_rms(static_cast<Eigen::Index>(k)) =
        std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
  }
  diag.training_rmse = replay.rmse;
  diag.training_relative_rmse = replay.relative_rmse;
  return result;
}

}  // namespace subalg
