#include "subalg/genred.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "subalg/error.hpp"

namespace subalg {

MonomialMap::MonomialMap(Eigen::MatrixXd L, PowerMatrix K) : L_(std::move(L)), K_(std::move(K)) {
  require(static_cast<std::size_t>(L_.cols()) == K_.rows(), ErrorCode::InvalidInput,
          "monomial map: coefficient matrix has " + std::to_string(L_.cols()) +
              " columns but the power matrix has " + std::to_string(K_.rows()) + " rows");
}

MonomialMap MonomialMap::zero(std::size_t outputs, std::size_t inputs) {
  return MonomialMap(Eigen::MatrixXd(static_cast<Eigen::Index>(outputs), 0), PowerMatrix(inputs));
}

MonomialMap MonomialMap::identity(std::size_t vars) {
  const auto n = static_cast<Eigen::Index>(vars);
  return MonomialMap(Eigen::MatrixXd::Identity(n, n), PowerMatrix::identity(vars));
}

bool MonomialMap::nontrivial() const {
  for (Eigen::Index j = 0; j < L_.cols(); ++j) {
    if (L_.col(j).isZero(0.0)) return false;
  }
  return true;
}

MonomialMap MonomialMap::without_zero_columns() const {
  std::vector<std::size_t> keep;
  for (Eigen::Index j = 0; j < L_.cols(); ++j) {
    if (!L_.col(j).isZero(0.0)) keep.push_back(static_cast<std::size_t>(j));
  }
  Eigen::MatrixXd L(L_.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    L.col(static_cast<Eigen::Index>(c)) = L_.col(static_cast<Eigen::Index>(keep[c]));
  }
  return MonomialMap(std::move(L), K_.select_rows(keep));
}

MonomialMap MonomialMap::select_outputs(std::span<const std::size_t> rows) const {
  Eigen::MatrixXd L(static_cast<Eigen::Index>(rows.size()), L_.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i] < outputs(), ErrorCode::InvalidInput, "select_outputs: row out of range");
    L.row(static_cast<Eigen::Index>(i)) = L_.row(static_cast<Eigen::Index>(rows[i]));
  }
  return MonomialMap(std::move(L), K_);
}

Eigen::VectorXd eval_monomial_map(const MonomialMap& map, std::span<const double> x) {
  require(x.size() == map.inputs(), ErrorCode::InvalidInput,
          "eval_monomial_map: input has length " + std::to_string(x.size()) + ", map expects " +
              std::to_string(map.inputs()));
  if (map.terms() == 0) return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(map.outputs()));
  return map.coefficients() * eval_monomial_vector(x, map.powers());
}

Eigen::VectorXd eval_monomial_map(const MonomialMap& map, const Eigen::VectorXd& x) {
  return eval_monomial_map(map, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

Eigen::MatrixXd eval_monomial_map_columns(const MonomialMap& map, const Eigen::MatrixXd& samples) {
  require(static_cast<std::size_t>(samples.rows()) == map.inputs(), ErrorCode::InvalidInput,
          "eval_monomial_map: samples have dimension " + std::to_string(samples.rows()) +
              ", map expects " + std::to_string(map.inputs()));
  if (map.terms() == 0) {
    return Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(map.outputs()), samples.cols());
  }
  return map.coefficients() * build_data_matrix(samples, map.powers());
}

namespace {

using Polynomial = std::map<std::vector<int>, double>;

// x_r,m expressed over the surviving state coordinates.
struct Substitution {
  std::size_t m;
  std::size_t i;
  std::size_t j;
  double alpha;
  std::vector<std::pair<std::size_t, double>> linear;  // (component, beta)
  double constant;
};

std::optional<std::size_t> leading_term(const Eigen::MatrixXd& L, Eigen::Index m, double tol) {
  const double scale = L.row(m).cwiseAbs().maxCoeff();
  if (scale == 0.0) return std::nullopt;
  for (Eigen::Index j = 0; j < L.cols(); ++j) {
    if (std::abs(L(m, j)) > tol * scale) return static_cast<std::size_t>(j);
  }
  return std::nullopt;
}

std::vector<int> add(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

Factorization assemble(const Eigen::MatrixXd& C_r, const MonomialMap& g_r,
                       const std::vector<bool>& alive, const std::vector<Substitution>& subs) {
  const std::size_t d_xr = g_r.outputs();
  std::vector<std::size_t> survivors;
  std::vector<std::size_t> position(d_xr, 0);
  for (std::size_t m = 0; m < d_xr; ++m) {
    if (alive[m]) {
      position[m] = survivors.size();
      survivors.push_back(m);
    }
  }
  const std::size_t d_x = survivors.size();
  auto unit = [d_x](std::size_t p) {
    std::vector<int> e(d_x, 0);
    e[p] = 1;
    return e;
  };

  std::vector<Polynomial> rows(d_xr);
  for (std::size_t m : survivors) rows[m][unit(position[m])] = 1.0;
  for (const auto& s : subs) {
    Polynomial& p = rows[s.m];
    p[add(unit(position[s.i]), unit(position[s.j]))] += s.alpha;
    for (const auto& [k, beta] : s.linear) p[unit(position[k])] += beta;
    if (s.constant != 0.0) p[std::vector<int>(d_x, 0)] += s.constant;
  }

  std::vector<PowerVector> support;
  for (const auto& p : rows) {
    for (const auto& [k, c] : p) support.emplace_back(k);
  }
  PowerMatrix K = PowerMatrix::canonical(d_x, std::move(support));
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d_xr),
                                            static_cast<Eigen::Index>(K.rows()));
  for (std::size_t m = 0; m < d_xr; ++m) {
    for (const auto& [k, c] : rows[m]) {
      P(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(K.find(k))) += c;
    }
  }

  MonomialMap h = MonomialMap(C_r * P, std::move(K)).without_zero_columns();
  MonomialMap g = g_r.select_outputs(survivors).without_zero_columns();
  return {std::move(h), std::move(g)};
}

bool preserves_values(const Factorization& f, const Eigen::MatrixXd& reference,
                      const Eigen::MatrixXd& samples, double tol) {
  Eigen::MatrixXd x = eval_monomial_map_columns(f.g, samples);
  Eigen::MatrixXd y = eval_monomial_map_columns(f.h, x);
  for (Eigen::Index k = 0; k < samples.cols(); ++k) {
    double ref = reference.col(k).cwiseAbs().maxCoeff();
    double err = (reference.col(k) - y.col(k)).cwiseAbs().maxCoeff();
    if (!(err <= tol * (1.0 + ref))) return false;
  }
  return true;
}

}  // namespace

Factorization eliminate_products(const Eigen::MatrixXd& C_r, const MonomialMap& g_r,
                                 const Eigen::MatrixXd& samples, double tol) {
  require(tol > 0.0 && tol < 1.0, ErrorCode::InvalidInput,
          "eliminate_products: tolerance must lie in (0,1)");
  require(samples.cols() > 0, ErrorCode::InvalidInput, "eliminate_products: no samples");
  require(static_cast<std::size_t>(C_r.cols()) == g_r.outputs(), ErrorCode::InvalidInput,
          "eliminate_products: C_r has " + std::to_string(C_r.cols()) +
              " columns but g_r has " + std::to_string(g_r.outputs()) + " components");

  const std::size_t d_xr = g_r.outputs();
  Factorization unchanged{MonomialMap(C_r, PowerMatrix::identity(d_xr)), g_r};
  if (d_xr < 2 || g_r.terms() == 0) return unchanged;

  const Eigen::MatrixXd G = eval_monomial_map_columns(g_r, samples);  // d_xr × s
  const Eigen::MatrixXd reference = C_r * G;
  const Eigen::MatrixXd& L = g_r.coefficients();
  const PowerMatrix& K = g_r.powers();

  std::vector<std::optional<std::size_t>> lead(d_xr);
  for (std::size_t m = 0; m < d_xr; ++m) lead[m] = leading_term(L, static_cast<Eigen::Index>(m), tol);
  auto has_power = [&](std::size_t m) {
    if (!lead[m]) return false;
    auto r = K.row(*lead[m]);
    return std::any_of(r.begin(), r.end(), [](int e) { return e != 0; });
  };
  // Leading rows index a decreasing K, so a smaller row index is a higher power.
  std::vector<std::size_t> order;
  for (std::size_t m = 0; m < d_xr; ++m) {
    if (has_power(m)) order.push_back(m);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return *lead[a] < *lead[b]; });

  std::vector<bool> alive(d_xr, true);
  std::vector<bool> pinned(d_xr, false);
  std::vector<Substitution> subs;

  for (std::size_t m : order) {
    if (pinned[m]) continue;
    const double target_norm = G.row(static_cast<Eigen::Index>(m)).norm();
    if (target_norm == 0.0) continue;
    auto lead_m = K.row(*lead[m]);
    bool accepted = false;

    for (std::size_t i = 0; i < d_xr && !accepted; ++i) {
      if (i == m || !alive[i] || !has_power(i)) continue;
      for (std::size_t j = i; j < d_xr && !accepted; ++j) {
        if (j == m || !alive[j] || !has_power(j)) continue;
        if (add(K.row(*lead[i]), K.row(*lead[j])) !=
            std::vector<int>(lead_m.begin(), lead_m.end())) {
          continue;
        }
        // lower-order generators admitted into the residual term
        std::vector<std::size_t> lower;
        for (std::size_t k = 0; k < d_xr; ++k) {
          if (k != m && alive[k] && (!lead[k] || *lead[k] > *lead[m])) lower.push_back(k);
        }
        const Eigen::Index s = samples.cols();
        Eigen::MatrixXd A(s, static_cast<Eigen::Index>(lower.size()) + 2);
        A.col(0) = G.row(static_cast<Eigen::Index>(i)).cwiseProduct(G.row(static_cast<Eigen::Index>(j))).transpose();
        for (std::size_t c = 0; c < lower.size(); ++c) {
          A.col(static_cast<Eigen::Index>(c) + 1) = G.row(static_cast<Eigen::Index>(lower[c])).transpose();
        }
        A.col(A.cols() - 1).setOnes();
        const Eigen::VectorXd b = G.row(static_cast<Eigen::Index>(m)).transpose();
        const Eigen::VectorXd coef = A.completeOrthogonalDecomposition().solve(b);
        const double residual = (A * coef - b).norm() / target_norm;
        if (!(residual <= tol) || coef(0) == 0.0) continue;

        Substitution sub{m, i, j, coef(0), {}, 0.0};
        // contributions below 1e-12 of the target are numerical noise
        const double negligible = 1e-12 * target_norm;
        for (std::size_t c = 0; c < lower.size(); ++c) {
          double beta = coef(static_cast<Eigen::Index>(c) + 1);
          if (std::abs(beta) * G.row(static_cast<Eigen::Index>(lower[c])).norm() > negligible) {
            sub.linear.emplace_back(lower[c], beta);
          }
        }
        double beta0 = coef(coef.size() - 1);
        if (std::abs(beta0) * std::sqrt(static_cast<double>(s)) > negligible) sub.constant = beta0;

        std::vector<bool> trial_alive = alive;
        trial_alive[m] = false;
        std::vector<Substitution> trial_subs = subs;
        trial_subs.push_back(sub);
        Factorization trial = assemble(C_r, g_r, trial_alive, trial_subs);
        if (!preserves_values(trial, reference, samples, tol)) continue;

        alive = std::move(trial_alive);
        subs = std::move(trial_subs);
        pinned[i] = pinned[j] = true;
        for (const auto& [k, beta] : sub.linear) pinned[k] = true;
        accepted = true;
      }
    }
  }

  if (subs.empty()) return unchanged;
  return assemble(C_r, g_r, alive, subs);
}

MonomialMap substitute_affine_inputs(const MonomialMap& map, std::span<const double> offset,
                                     std::span<const double> scale) {
  const std::size_t n = map.inputs();
  require(offset.size() == n && scale.size() == n, ErrorCode::InvalidInput,
          "substitute_affine_inputs: offset/scale length must equal the input dimension");
  for (double s : scale) {
    require(s != 0.0 && std::isfinite(s), ErrorCode::InvalidInput,
            "substitute_affine_inputs: scale entries must be finite and nonzero");
  }

  const PowerMatrix& K = map.powers();
  std::map<std::vector<int>, Eigen::VectorXd> acc;
  const auto outputs = static_cast<Eigen::Index>(map.outputs());

  for (std::size_t row = 0; row < K.rows(); ++row) {
    auto k = K.row(row);
    // ((v_j - o_j)/s_j)^k_j = s_j^-k_j Σ_c C(k_j,c) v_j^c (-o_j)^(k_j-c)
    std::vector<std::vector<double>> expansions(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double>& e = expansions[j];
      e.assign(static_cast<std::size_t>(k[j]) + 1, 0.0);
      double binom = 1.0;
      for (int c = 0; c <= k[j]; ++c) {
        e[static_cast<std::size_t>(c)] =
            binom * std::pow(-offset[j], k[j] - c) / std::pow(scale[j], k[j]);
        binom = binom * (k[j] - c) / (c + 1);
      }
    }
    std::vector<int> c(n, 0);
    while (true) {
      double weight = 1.0;
      for (std::size_t j = 0; j < n; ++j) weight *= expansions[j][static_cast<std::size_t>(c[j])];
      if (weight != 0.0) {
        auto [it, inserted] = acc.try_emplace(c, Eigen::VectorXd::Zero(outputs));
        it->second += weight * map.coefficients().col(static_cast<Eigen::Index>(row));
      }
      std::size_t j = n;
      while (j-- > 0) {
        if (c[j] < k[j]) {
          ++c[j];
          break;
        }
        c[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
  }

  std::vector<PowerVector> support;
  for (const auto& [k, col] : acc) support.emplace_back(k);
  PowerMatrix out_K = PowerMatrix::canonical(n, std::move(support));
  Eigen::MatrixXd out_L(outputs, static_cast<Eigen::Index>(out_K.rows()));
  for (const auto& [k, col] : acc) out_L.col(static_cast<Eigen::Index>(out_K.find(k))) = col;
  return MonomialMap(std::move(out_L), std::move(out_K)).without_zero_columns();
}

}  // namespace subalg
