#pragma once

#include <vector>

#include "mpt/channel.hpp"
#include "mpt/combinatorics.hpp"
#include "mpt/config.hpp"

namespace mpt {

// Embedded chain over the queue occupancy immediately after departures.
// States 0..K, row-stochastic.
struct TransitionMatrix {
  int states = 0;
  std::vector<double> p;  // row-major, states*states

  double& at(int i, int j) { return p[static_cast<std::size_t>(i) * states + j]; }
  double at(int i, int j) const {
    return p[static_cast<std::size_t>(i) * states + j];
  }
  double row_sum(int i) const;
};

struct EpochDurations {
  std::vector<double> service_by_state;  // E[T_d(i)], transmission time
  std::vector<double> epoch_by_state;    // E[W(i)] = idle (state 0 only) + E[T_d(i)]
  double expected = 0.0;                 // E[W]
};

struct Metrics {
  double blocking = 0.0;        // P_b
  double throughput_bps = 0.0;  // S
  double mean_queue = 0.0;      // E[Q], packets
  double mean_delay_s = 0.0;    // E[D]
  double mean_batch = 0.0;      // E[s]
};

struct ChainSolution {
  TransitionMatrix transition;
  std::vector<double> pi_departure;  // occupancy just after departures
  std::vector<double> pi_steady;     // occupancy at arbitrary times (PASTA)
  EpochDurations epochs;
  Metrics metrics;
};

/// p_{i,j}(m, y, rate): transition probability given batch size m, y errored
/// packets and the batch rate. Transitions out of state 0 use an effective
/// occupancy of 1 (the arrival that wakes the server joins before service,
/// and arrivals are counted over the frame only).
double conditional_transition(const ValidatedConfig& config, int i, int j,
                              int m, int y, double rate_bps);

/// Unconditional p_{i,j}: mixture of the conditional kernel over the batch
/// size, error count and rate distributions.
TransitionMatrix build_transition_matrix(const ValidatedConfig& config,
                                         const BatchSizeDistribution& batch,
                                         const RateDistribution& rates,
                                         const ErrorLaw& errors);

/// Unique stationary row vector of P: direct least-squares solve with the
/// normalization row appended; damped power iteration as fallback.
std::vector<double> solve_departure_distribution(const TransitionMatrix& P,
                                                 double residual_tol = 1e-10);

/// max_j |(pi P)_j - pi_j|
double fixed_point_residual(const TransitionMatrix& P,
                            const std::vector<double>& pi);

EpochDurations epoch_durations(const ValidatedConfig& config,
                               const BatchSizeDistribution& batch,
                               const RateDistribution& rates,
                               const std::vector<double>& pi_departure);

/// Occupancy distribution at arbitrary times from the departure distribution
/// via PASTA; the last state closes the distribution to mass one.
std::vector<double> steady_state_distribution(
    const ValidatedConfig& config, const BatchSizeDistribution& batch,
    const RateDistribution& rates, const ErrorLaw& errors,
    const std::vector<double>& pi_departure, const EpochDurations& epochs);

Metrics compute_metrics(const ValidatedConfig& config,
                        const std::vector<double>& pi_departure,
                        const std::vector<double>& pi_steady,
                        const BatchSizeDistribution& batch);

/// Full analytic pipeline. Requires homogeneous traffic weights.
ChainSolution analyze(const ValidatedConfig& config);

}  // namespace mpt
