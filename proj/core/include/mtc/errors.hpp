#pragma once

#include <stdexcept>
#include <string>

namespace mtc {

enum class errc {
  not_yet_grounded,
  ring_mismatch,
  shape_mismatch,
  not_invertible,
  bad_params,
  split_field_required,
  no_ribbon,
  degenerate,
  not_well_defined,
  non_unique,
  needs_projective,
  too_large,
  syntax_error,
  framing_count_mismatch,
  calibration_failed,
  version_mismatch,
  corrupt,
  internal,
};

class error : public std::runtime_error {
public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const { return kind_; }

private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

} // namespace mtc
