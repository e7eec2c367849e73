#include "subalg/error.hpp"

namespace subalg {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::Capacity: return "CAPACITY";
    case ErrorCode::RankDeficiency: return "RANK_DEFICIENT";
    case ErrorCode::NumericalOverflow: return "NUMERICAL_OVERFLOW";
    case ErrorCode::DegenerateModel: return "DEGENERATE_MODEL";
    case ErrorCode::Divergence: return "DIVERGENCE";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Validation: return "VALIDATION";
    case ErrorCode::Format: return "FORMAT";
    case ErrorCode::DimMismatch: return "DIM_MISMATCH";
    case ErrorCode::Io: return "IO";
    case ErrorCode::Generation: return "GENERATION";
  }
  return "UNKNOWN";
}

}  // namespace subalg
