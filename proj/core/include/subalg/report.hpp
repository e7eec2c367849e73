#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "subalg/model.hpp"
#include "subalg/pipeline.hpp"

namespace subalg {

/// x1..xn then y (d_y = 1) or y1..y{d_y}.
std::vector<std::string> variable_names(std::size_t n, std::size_t d_y);
/// Output names y or y1..y{d_y}.
std::vector<std::string> output_names(std::size_t d_y);

/// "x1*x2^2*y"; "1" for the constant monomial.
std::string monomial_name(std::span<const int> powers, const std::vector<std::string>& names);
/// Comma separated names of every monomial in K.
std::string basis_names(const PowerMatrix& K, const std::vector<std::string>& names);

/// Plain-text diagnostics with sections CONFIG, HORIZONS, TABLE1, TABLE2,
/// GENERATORS and RESIDUALS.
std::string format_report(const IdentDiagnostics& diag);

/// Human-readable model summary.
std::string format_inspect(const ObserverModel& model);

/// Per-dimension "rmse relative_rmse" table.
std::string format_evaluation(const PredictionReport& report);

}  // namespace subalg
