#include "extvol/error.hpp"

namespace extvol {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_lattice: return "invalid-lattice";
    case ErrorCode::invalid_class: return "invalid-class";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::not_totally_real: return "not-totally-real";
    case ErrorCode::asymmetric_matrix: return "asymmetric-matrix";
    case ErrorCode::not_positive_definite: return "not-positive-definite";
    case ErrorCode::invalid_tau: return "invalid-tau";
    case ErrorCode::non_convergence: return "non-convergence";
    case ErrorCode::empty_search: return "empty-search";
    case ErrorCode::inadmissible: return "inadmissible";
    case ErrorCode::not_unimodular: return "not-unimodular";
    case ErrorCode::zero_component: return "zero-component";
    case ErrorCode::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace extvol
