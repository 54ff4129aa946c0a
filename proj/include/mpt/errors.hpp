#pragma once

#include <stdexcept>
#include <string>

namespace mpt {

// One code per distinct failure condition so callers can react to the
// condition rather than parse message text.
enum class Errc {
  // config / input
  parse_error,
  bad_field,
  bad_parameter,
  smax_exceeds_antennas,
  buffer_too_small,
  rates_not_ascending,
  threshold_mismatch,
  thresholds_not_ascending,
  bad_snr,
  bad_traffic_weights,
  // combinatorics
  invalid_composition,
  combinatorics_bound,
  enumeration_too_large,
  // channel / rates
  bad_batch_size,
  subset_explosion,
  // embedded chain
  bad_state,
  not_converged,
  lambda_zero,
  negative_mass,
  division_by_zero,
  heterogeneous_traffic,
  // simulator
  empty_queue,
  invalid_duration,
  no_deliveries,
  // io / tooling
  io_error,
  spec_error,
  internal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace mpt
