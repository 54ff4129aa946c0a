#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mpt/errors.hpp"

namespace mpt {

/// 10^(db/10); +inf maps to +inf.
double db_to_linear(double db);

struct FrameLengths {
  double l_sb = 0;   // preamble + space-batch announcement, bits
  double l_tr = 0;   // one training sequence, bits (sent once per antenna)
  double l_csi = 0;  // one CSI report, bits (sent once per selected node)
  double l_d = 0;    // data payload, bits
  double l_ack = 0;  // one ACK, bits (sent once per selected node)
};

// Full scenario description. Plain aggregate; run it through validate()
// before handing it to the solver or the simulator.
struct SystemConfig {
  int n_nodes = 0;     // N, single-antenna receivers
  int n_antennas = 0;  // M, transmit antennas at the AP
  int buffer_size = 0; // K, shared queue capacity in packets
  int s_max = 0;       // max spatial streams per transmission
  double aggregate_rate = 0.0;     // packet arrivals per second
  double packet_error_prob = 0.0;  // per-packet error probability
  FrameLengths frame_lengths;
  std::vector<double> rates;             // bits/s, strictly ascending
  std::vector<double> snr_thresholds_db; // per-rate upper bound, last may be +inf
  std::vector<double> node_mean_snr_db;  // per node (size N, or 1 = broadcast)
  std::vector<double> traffic_weights;   // per node (empty = homogeneous)
  bool ideal_channel = false;  // always top rate, zero packet errors
};

// Immutable, checked scenario. The rate/SNR interval mapping is fixed here:
// rate i serves SNR in (upper[i-1], upper[i]] with upper[0-1] = 0 and the
// top interval always extending to +inf.
class ValidatedConfig {
 public:
  int n_nodes() const { return cfg_.n_nodes; }
  int n_antennas() const { return cfg_.n_antennas; }
  int buffer_size() const { return cfg_.buffer_size; }
  int s_max() const { return cfg_.s_max; }
  double aggregate_rate() const { return cfg_.aggregate_rate; }
  double packet_error_prob() const { return cfg_.packet_error_prob; }
  const FrameLengths& frame() const { return cfg_.frame_lengths; }
  const std::vector<double>& rates() const { return cfg_.rates; }
  int n_rates() const { return static_cast<int>(cfg_.rates.size()); }
  const std::vector<double>& snr_thresholds_db() const {
    return cfg_.snr_thresholds_db;
  }
  const std::vector<double>& node_mean_snr_db() const {
    return cfg_.node_mean_snr_db;
  }
  const std::vector<double>& traffic_weights() const {
    return cfg_.traffic_weights;
  }
  bool ideal_channel() const { return cfg_.ideal_channel; }

  const std::vector<double>& mean_snr_linear() const {
    return mean_snr_linear_;
  }
  /// Upper SNR bound (linear) of each rate's interval; back() is +inf.
  const std::vector<double>& rate_upper_snr_linear() const {
    return rate_upper_linear_;
  }
  bool homogeneous_traffic() const { return homogeneous_traffic_; }
  bool homogeneous_snr() const { return homogeneous_snr_; }
  double total_weight() const { return total_weight_; }

  /// Largest possible space-batch when q packets sit in the queue.
  int s_of(int q) const { return std::max(1, std::min(q, cfg_.s_max)); }
  /// Largest batch size realizable at all: min(s_max, N).
  int max_batch() const { return std::min(cfg_.s_max, cfg_.n_nodes); }

  /// The normalized config (weights filled in, broadcasts expanded,
  /// p_e forced to 0 under ideal_channel). validate(raw()) is a no-op.
  const SystemConfig& raw() const { return cfg_; }

 private:
  friend ValidatedConfig validate(SystemConfig config);
  ValidatedConfig() = default;

  SystemConfig cfg_;
  std::vector<double> mean_snr_linear_;
  std::vector<double> rate_upper_linear_;
  bool homogeneous_traffic_ = true;
  bool homogeneous_snr_ = true;
  double total_weight_ = 0.0;
};

/// Checks every invariant and returns the immutable form. Throws Error with
/// a distinct Errc per violated invariant.
ValidatedConfig validate(SystemConfig config);

/// Parses the JSON scenario document (keys mirror SystemConfig fields).
/// "inf" (string) is accepted wherever +inf is meaningful.
SystemConfig parse_config_json(const std::string& text);

ValidatedConfig load_config_json(const std::string& text);
ValidatedConfig load_config_file(const std::string& path);

}  // namespace mpt
