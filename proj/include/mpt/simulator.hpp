#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mpt/config.hpp"
#include "mpt/markov.hpp"

namespace mpt {

struct Packet {
  int destination = 0;
  double arrival_time = 0.0;
  int attempts = 0;  // completed transmission attempts
};

// Counters and time-weighted tallies over the measurement window
// [warmup, duration]. With warmup = 0 the conservation identity reduces to
// arrivals = blocked + delivered + final_queue; in general the queue content
// at the window start joins the left-hand side.
struct SimStats {
  std::uint64_t arrivals = 0;
  std::uint64_t blocked = 0;
  std::uint64_t delivered = 0;
  std::uint64_t batches = 0;
  std::uint64_t initial_queue = 0;  // occupancy when the window opened
  std::uint64_t final_queue = 0;    // occupancy when the window closed
  double sum_delay = 0.0;           // arrival to successful reception, seconds
  double time_weighted_queue = 0.0; // packet-seconds
  double sim_time = 0.0;            // window length, seconds
  std::vector<std::uint64_t> batch_size_histogram;       // [m]
  std::vector<std::uint64_t> departure_state_histogram;  // occupancy after departures
  std::vector<double> occupancy_time_histogram;          // seconds at each occupancy
  // [q][m]: batches of size m scheduled while the queue held q packets at the
  // preceding departure (q = 0 for batches woken by an arrival)
  std::vector<std::vector<std::uint64_t>> batch_given_occupancy;

  bool operator==(const SimStats&) const = default;
};

/// FIFO scan from the head of the queue picking the first packet of each
/// distinct destination, up to s_max. Returns indices into `queue`.
std::vector<int> build_space_batch(const std::vector<Packet>& queue, int s_max);

/// Event-driven run of the full system. Identical (config, seed, duration,
/// warmup) give bit-identical stats: four sub-streams are split off the seed
/// (arrivals, destinations, SNR, error coins) and consumed in a fixed order —
/// one interarrival + one destination draw per arrival, per-node SNR draws in
/// batch order at batch construction (skipped under ideal_channel), one error
/// coin per packet in batch order at frame end.
SimStats simulate(
    const ValidatedConfig& config, std::uint64_t seed, double duration_s,
    double warmup_s,
    const std::function<void(const Packet&, double)>& on_delivery = {});

/// Sample analogues of the analytic metrics. NoDeliveries if nothing was
/// successfully received in the window.
Metrics measured_metrics(const SimStats& stats, const ValidatedConfig& config);

}  // namespace mpt
