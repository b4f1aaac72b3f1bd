#pragma once

#include <stdexcept>
#include <string>

namespace gf {

enum class Errc {
  zero_row_or_column,
  bad_dimension,
  not_in_language,
  not_shift_commuting,
  not_surjective,
  empty_fiber,
  depth_overflow,
  insufficient_depth,
  zero_mass,
  setting_c_violation,
  zero_matrix,
  case_mismatch,
  undefined_branch,
  undefined_at_point,
  support_mismatch,
  not_stochastic,
  not_irreducible,
  not_rational,
  config,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace gf
