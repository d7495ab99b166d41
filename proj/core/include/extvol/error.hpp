#pragma once

#include <stdexcept>
#include <string>

namespace extvol {

enum class ErrorCode {
  invalid_lattice,
  invalid_class,
  dimension_mismatch,
  not_totally_real,
  asymmetric_matrix,
  not_positive_definite,
  invalid_tau,
  non_convergence,
  empty_search,
  inadmissible,
  not_unimodular,
  zero_component,
  invalid_argument,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace extvol
