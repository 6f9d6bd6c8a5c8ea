#include "trop/error.hpp"

namespace trop {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::GlueNotInvolution: return "GlueNotInvolution";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::Unbalanced: return "Unbalanced";
    case ErrorCode::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::UnsupportedGenus: return "UnsupportedGenus";
    case ErrorCode::NotAWallType: return "NotAWallType";
    case ErrorCode::DegenerateSystem: return "DegenerateSystem";
    case ErrorCode::UnsupportedValence: return "UnsupportedValence";
    case ErrorCode::NotGeneralPosition: return "NotGeneralPosition";
    case ErrorCode::DegenerateVertex: return "DegenerateVertex";
    case ErrorCode::UnexpectedImageDimension: return "UnexpectedImageDimension";
    case ErrorCode::InvarianceViolation: return "InvarianceViolation";
  }
  return "Unknown";
}

}  // namespace trop
