#pragma once

#include <span>
#include <vector>

#include "mpt/config.hpp"
#include "mpt/rng.hpp"

namespace mpt {

class Rng;

// Per-stream SNR model under zero-forcing beamforming: when m streams are
// active, node n sees an Erlang-distributed SNR with shape M-m+1 and scale
// mean_snr_linear[n]/m (the transmit power splits evenly over the streams).
struct SnrModel {
  std::vector<double> mean_snr_linear;  // per node, batch size 1
  int n_antennas = 1;

  static SnrModel from_config(const ValidatedConfig& config) {
    return SnrModel{config.mean_snr_linear(), config.n_antennas()};
  }
  double scale(int node, int m) const {
    return mean_snr_linear[node] / static_cast<double>(m);
  }
};

/// Pr{SNR of node <= gamma} with m active streams.
double snr_cdf(const SnrModel& model, int node, int m, double gamma_linear);

/// Probability of each rate being the node's feasible rate, given the
/// per-rate upper SNR bounds (last bound +inf). Entries sum to 1.
std::vector<double> feasible_rate_probs(const SnrModel& model, int node, int m,
                                        std::span<const double> upper_linear);

/// Probability that a batch over the given distinct nodes is sent at rate
/// `rate_index` (0-based): the minimum feasible rate over the batch.
double batch_rate_prob(const SnrModel& model, std::span<const int> batch,
                       std::span<const double> upper_linear, int rate_index);

// phi[m][l]: probability that a batch of m packets is sent at rate l,
// averaged over all C(N,m) destination subsets. Rows cover m in
// [1, min(s_max, N)]; larger batches cannot occur.
struct RateDistribution {
  std::vector<std::vector<double>> phi;  // phi[m]; phi[0] unused

  double at(int m, int rate_index) const;
  int max_m() const { return static_cast<int>(phi.size()) - 1; }
  int n_rates() const { return phi.empty() ? 0 : static_cast<int>(phi[1].size()); }
};

/// Exact subset-enumeration average of batch_rate_prob. Under ideal_channel
/// the top rate gets probability 1 for every m. SubsetExplosion if C(N,m)
/// exceeds max_subsets (homogeneous-SNR configs shortcut to one subset).
RateDistribution rate_distribution(const ValidatedConfig& config,
                                   std::uint64_t max_subsets = 10'000'000);

/// Binomial row psi[y], y in [0,m]: probability that y of the m packets in
/// a batch are corrupted.
std::vector<double> error_law(double p_e, int m);

struct ErrorLaw {
  double p_e = 0.0;
  std::vector<std::vector<double>> psi;  // psi[m][y] for m in [1, max_m]

  static ErrorLaw build(double p_e, int max_m);
  double at(int y, int m) const { return psi[m][y]; }
};

/// One SNR draw for the node under m active streams; the channel is redrawn
/// independently for every space-batch.
double sample_snr(const SnrModel& model, int node, int m, Rng& rng);

/// Rate index (0-based) selected for a stream with the given SNR.
int rate_index_for_snr(double gamma_linear,
                       std::span<const double> upper_linear);

}  // namespace mpt
