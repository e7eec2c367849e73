#include "subalg/report.hpp"

#include <cstdarg>
#include <cstdio>

#include "subalg/config_io.hpp"

namespace subalg {

namespace {

std::string printf_string(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::string row_text(const Eigen::MatrixXd& M, Eigen::Index i) {
  std::string out = "(";
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    if (j) out += ", ";
    out += printf_string("%.6g", M(i, j));
  }
  return out + ")";
}

void append_map(std::string& out, const char* label, const MonomialMap& map,
                const std::vector<std::string>& in_names,
                const std::vector<std::string>& out_names) {
  out += printf_string("%s basis (%zu): ", label, map.terms());
  out += map.terms() ? basis_names(map.powers(), in_names) : "(zero map)";
  out += '\n';
  if (!map.terms()) return;
  out += printf_string("%s coefficients:\n", label);
  for (std::size_t i = 0; i < map.outputs(); ++i) {
    out += "  " + out_names[i] + " = " + row_text(map.coefficients(), static_cast<Eigen::Index>(i)) + '\n';
  }
}

}  // namespace

std::vector<std::string> output_names(std::size_t d_y) {
  if (d_y == 1) return {"y"};
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= d_y; ++j) out.push_back("y" + std::to_string(j));
  return out;
}

std::vector<std::string> variable_names(std::size_t n, std::size_t d_y) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  for (auto& y : output_names(d_y)) out.push_back(std::move(y));
  return out;
}

std::string monomial_name(std::span<const int> powers, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t j = 0; j < powers.size(); ++j) {
    if (powers[j] == 0) continue;
    if (!out.empty()) out += '*';
    out += j < names.size() ? names[j] : "v" + std::to_string(j + 1);
    if (powers[j] > 1) out += '^' + std::to_string(powers[j]);
  }
  return out.empty() ? "1" : out;
}

std::string basis_names(const PowerMatrix& K, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < K.rows(); ++i) {
    if (i) out += ", ";
    out += monomial_name(K.row(i), names);
  }
  return out;
}

std::string format_report(const IdentDiagnostics& d) {
  std::string out;
  out += "CONFIG\n";
  out += format_ident_config(d.config);

  out += "\nHORIZONS\n";
  out += printf_string("t_plus %zu\nt_minus %zu\nanchor_t %zu\n", d.t_plus, d.t_minus, d.anchor_t);
  out += printf_string("pooled %s\nplateau_stop %s\n", d.pooled ? "true" : "false",
                       d.plateau_stop ? "true" : "false");
  out += "iterations (t_plus t_minus block/blocks columns generators_in n1 generators_kept)\n";
  for (const auto& it : d.iterations) {
    out += printf_string("  %zu %zu %zu/%zu %zu %zu %zu %zu\n", it.t_plus, it.t_minus, it.block,
                         it.blocks, it.columns, it.generators_in, it.n1, it.generators_kept);
  }

  out += "\nTABLE1\n";
  for (const auto& it : d.iterations) {
    out += printf_string("# t_plus=%zu t_minus=%zu block=%zu/%zu n1=%zu discarded=%.6g\n",
                         it.t_plus, it.t_minus, it.block, it.blocks, it.n1, it.discarded_fraction);
    out += format_truncation_table(it.table1);
  }

  out += "\nTABLE2\n";
  out += printf_string("# n2=%zu\n", d.n2);
  out += format_truncation_table(d.table2);

  out += "\nGENERATORS\n";
  out += printf_string("past_monomials %zu\n", d.past_monomials);
  out += printf_string("n1 %zu\n", d.n1);
  out += printf_string("generators_after_lk %zu\n", d.generators_after_lk);
  out += printf_string("state_before_elimination %zu\n", d.generators_before_elimination);
  out += printf_string("state_after_elimination %zu\n", d.generators_after_elimination);
  out += printf_string("n %zu\n", d.state_dim);
  out += printf_string("output_terms %zu\n", d.output_terms);
  out += printf_string("dynamics_monomials %zu\n", d.dynamics_monomials);
  out += printf_string("dynamics_terms %zu\n", d.dynamics_terms);
  out += printf_string("past_fit_relative_residual %.6g\n", d.past_fit_relative_residual);

  out += "\nRESIDUALS\n";
  const auto names = output_names(static_cast<std::size_t>(d.training_rmse.size()));
  for (Eigen::Index j = 0; j < d.training_rmse.size(); ++j) {
    out += printf_string("training_rmse %s %.6g\n", names[static_cast<std::size_t>(j)].c_str(),
                         d.training_rmse(j));
  }
  for (Eigen::Index j = 0; j < d.training_relative_rmse.size(); ++j) {
    out += printf_string("training_relative_rmse %s %.6g\n",
                         names[static_cast<std::size_t>(j)].c_str(), d.training_relative_rmse(j));
  }
  for (Eigen::Index k = 0; k < d.training_rms.size(); ++k) {
    out += printf_string("series %ld rms %.6g\n", static_cast<long>(k + 1), d.training_rms(k));
  }
  return out;
}

std::string format_inspect(const ObserverModel& m) {
  std::string out;
  out += printf_string("n = %zu\nd_y = %zu\n", m.n, m.d_y);
  const auto xy = variable_names(m.n, m.d_y);
  const std::vector<std::string> x(xy.begin(), xy.begin() + static_cast<std::ptrdiff_t>(m.n));
  std::vector<std::string> next;
  for (const auto& v : x) next.push_back(v + "'");
  append_map(out, "f_o", m.f_o, xy, next);
  append_map(out, "h_o", m.h_o, x, output_names(m.d_y));
  if (m.scaling) {
    out += "scaling offset = " + row_text(m.scaling->offset.transpose(), 0) + '\n';
    out += "scaling scale = " + row_text(m.scaling->scale.transpose(), 0) + '\n';
  }
  if (m.g_io) {
    out += printf_string("g_io: t_minus = %zu, %zu monomials\n", m.g_io->t_minus,
                         m.g_io->g.terms());
  }
  out += printf_string("x0: %ld series\n", static_cast<long>(m.x0.cols()));
  for (const auto& [k, v] : m.provenance) out += "provenance " + k + " = " + v + '\n';
  return out;
}

std::string format_evaluation(const PredictionReport& r) {
  std::string out = printf_string("%-6s %-24s %s\n", "output", "rmse", "relative_rmse");
  const auto names = output_names(static_cast<std::size_t>(r.rmse.size()));
  for (Eigen::Index j = 0; j < r.rmse.size(); ++j) {
    out += printf_string("%-6s %-24.17g %.17g\n", names[static_cast<std::size_t>(j)].c_str(),
                         r.rmse(j), r.relative_rmse(j));
  }
  return out;
}

}  // namespace subalg
