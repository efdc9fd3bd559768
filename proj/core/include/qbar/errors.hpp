#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbar {

enum class ErrorCode {
  zero_radicand,
  degree_cap_exceeded,
  division_by_zero,
  rational_context,
  precision_cap_exceeded,
  ambient_mismatch,
  rank_deficient,
  zero_vector,
  zero_object,
  not_regular,
  dimension_too_small,
  contradicts_regularity,
  anisotropic_input,
  radical_vector,
  anisotropic_required,
  no_anisotropic_vector,
  domain_mismatch,
  not_an_isometry,
  unknown_bound_id,
  bad_params,
  schema_error,
  asymmetric_gram,
  bad_tower_expr,
  context_mismatch,
  proof_gap,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace qbar
