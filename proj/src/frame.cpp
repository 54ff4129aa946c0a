#include "mpt/frame.hpp"

#include <cmath>

namespace mpt {

double control_duration(const ValidatedConfig& config, int m) {
  if (m < 1 || m > config.n_antennas())
    fail(Errc::bad_batch_size,
         "batch size " + std::to_string(m) + " outside [1, n_antennas]");
  const FrameLengths& fl = config.frame();
  const double bits =
      fl.l_sb + config.n_antennas() * fl.l_tr + m * (fl.l_csi + fl.l_ack);
  return bits / config.rates().front();
}

double frame_duration(const ValidatedConfig& config, int m, double rate_bps) {
  if (!(rate_bps > 0.0))
    fail(Errc::bad_parameter, "rate must be positive");
  return control_duration(config, m) + config.frame().l_d / rate_bps;
}

double poisson_pmf(double mean, int v) {
  if (v < 0) return 0.0;
  if (!(mean > 0.0)) return v == 0 ? 1.0 : 0.0;
  if (v == 0) return std::exp(-mean);
  return std::exp(v * std::log(mean) - mean - std::lgamma(v + 1.0));
}

double poisson_tail(double mean, int v) {
  if (v <= 0) return 1.0;
  if (!(mean > 0.0)) return 0.0;
  if (v <= mean) {
    // head is the small side here
    double head = 0.0;
    for (int u = 0; u < v; ++u) head += poisson_pmf(mean, u);
    return std::max(0.0, 1.0 - head);
  }
  double sum = 0.0;
  for (int u = v;; ++u) {
    const double term = poisson_pmf(mean, u);
    sum += term;
    if (u > mean && (term == 0.0 || term < sum * 1e-18)) break;
  }
  return std::min(1.0, sum);
}

double arrivals_in_frame_pmf(double lambda, double t, int v) {
  if (!(lambda >= 0.0)) fail(Errc::bad_parameter, "lambda must be >= 0");
  if (!(t > 0.0)) fail(Errc::bad_parameter, "duration must be > 0");
  return poisson_pmf(lambda * t, v);
}

}  // namespace mpt
