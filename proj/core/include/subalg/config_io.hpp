#pragma once

#include <string>
#include <string_view>

#include "subalg/keyvalue.hpp"
#include "subalg/pipeline.hpp"

namespace subalg {

inline constexpr std::size_t kDefaultExpectedStateDim = 2;

/// r1..r4 are mandatory. Structural keys fall back to defaults; horizon
/// maxima default to 4·n_expected. Unknown keys are rejected.
IdentConfig parse_ident_config(const KeyValueDocument& doc);
IdentConfig parse_ident_config(std::string_view text, std::string source = "config");

/// Flat key = value rendering of every field, defaults included. Parsing the
/// output gives back the same configuration.
std::string format_ident_config(const IdentConfig& cfg);

}  // namespace subalg
