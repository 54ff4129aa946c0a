#include "mpt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mpt/channel.hpp"
#include "mpt/frame.hpp"
#include "mpt/rng.hpp"

namespace mpt {

std::vector<int> build_space_batch(const std::vector<Packet>& queue, int s_max) {
  if (queue.empty()) fail(Errc::empty_queue, "cannot schedule from an empty queue");
  std::vector<int> batch;
  std::vector<int> taken;  // destinations already in the batch
  for (int i = 0; i < static_cast<int>(queue.size()); ++i) {
    const int dest = queue[i].destination;
    if (std::find(taken.begin(), taken.end(), dest) != taken.end()) continue;
    taken.push_back(dest);
    batch.push_back(i);
    if (static_cast<int>(batch.size()) == s_max) break;
  }
  return batch;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Window {
  double start = 0.0;
  double end = 0.0;
  bool contains(double t) const { return t >= start && t <= end; }
};

}  // namespace

SimStats simulate(const ValidatedConfig& config, std::uint64_t seed,
                  double duration_s, double warmup_s,
                  const std::function<void(const Packet&, double)>& on_delivery) {
  if (!(warmup_s >= 0.0) || !(duration_s > warmup_s))
    fail(Errc::invalid_duration, "need duration > warmup >= 0");

  const int K = config.buffer_size();
  const int s_max = config.s_max();
  const double lambda = config.aggregate_rate();
  const double p_e = config.packet_error_prob();
  const bool ideal = config.ideal_channel();
  const SnrModel snr = SnrModel::from_config(config);
  const auto& uppers = config.rate_upper_snr_linear();
  const double top_rate = config.rates().back();

  std::uint64_t state = seed;
  Rng arrival_rng(splitmix64(state));
  Rng dest_rng(splitmix64(state));
  Rng snr_rng(splitmix64(state));
  Rng error_rng(splitmix64(state));

  std::vector<double> cum_weights(config.traffic_weights().size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cum_weights.size(); ++i) {
    acc += config.traffic_weights()[i];
    cum_weights[i] = acc;
  }

  const Window window{warmup_s, duration_s};
  SimStats stats;
  stats.batch_size_histogram.assign(s_max + 1, 0);
  stats.departure_state_histogram.assign(K + 1, 0);
  stats.occupancy_time_histogram.assign(K + 1, 0.0);
  stats.batch_given_occupancy.assign(
      K + 1, std::vector<std::uint64_t>(s_max + 1, 0));

  std::vector<Packet> queue;
  queue.reserve(K);
  std::vector<int> batch;
  bool transmitting = false;
  double now = 0.0;
  double next_arrival = lambda > 0.0 ? arrival_rng.exponential(1.0 / lambda) : kInf;
  double next_departure = kInf;
  bool window_open = (warmup_s == 0.0);
  if (window_open) stats.initial_queue = 0;

  auto advance_to = [&](double t) {
    // piecewise-constant occupancy; split the integral at the window edges
    const double a = std::max(now, window.start);
    const double b = std::min(t, window.end);
    if (b > a) {
      stats.occupancy_time_histogram[queue.size()] += b - a;
      stats.time_weighted_queue += static_cast<double>(queue.size()) * (b - a);
    }
    if (!window_open && t >= window.start) {
      window_open = true;
      stats.initial_queue = queue.size();
    }
    now = t;
  };

  auto start_batch = [&](int sched_occupancy) {
    batch = build_space_batch(queue, s_max);
    const int m = static_cast<int>(batch.size());
    for (std::size_t a = 0; a < batch.size(); ++a)
      for (std::size_t b = a + 1; b < batch.size(); ++b)
        if (queue[batch[a]].destination == queue[batch[b]].destination)
          fail(Errc::internal, "duplicate destination inside a space-batch");
    double rate = top_rate;
    if (!ideal) {
      for (int idx : batch) {
        const double gamma =
            sample_snr(snr, queue[idx].destination, m, snr_rng);
        rate = std::min(rate,
                        config.rates()[rate_index_for_snr(gamma, uppers)]);
      }
    }
    if (window.contains(now)) {
      ++stats.batches;
      ++stats.batch_size_histogram[m];
      ++stats.batch_given_occupancy[sched_occupancy][m];
    }
    transmitting = true;
    next_departure = now + frame_duration(config, m, rate);
  };

  while (true) {
    const double t = std::min(next_arrival, next_departure);
    if (t > duration_s) break;

    if (next_departure <= next_arrival) {
      // departure first: a simultaneous arrival sees the purged queue
      advance_to(next_departure);
      next_departure = kInf;
      transmitting = false;
      std::vector<char> keep(queue.size(), 1);
      for (int idx : batch) {
        ++queue[idx].attempts;
        if (error_rng.bernoulli(p_e)) continue;  // stays for retransmission
        keep[idx] = 0;
        if (window.contains(now)) {
          ++stats.delivered;
          stats.sum_delay += now - queue[idx].arrival_time;
        }
        if (on_delivery) on_delivery(queue[idx], now);
      }
      std::size_t w = 0;
      for (std::size_t r = 0; r < queue.size(); ++r)
        if (keep[r]) queue[w++] = queue[r];
      queue.resize(w);
      if (window.contains(now))
        ++stats.departure_state_histogram[queue.size()];
      if (!queue.empty()) start_batch(static_cast<int>(queue.size()));
    } else {
      advance_to(next_arrival);
      next_arrival = now + arrival_rng.exponential(1.0 / lambda);
      const int dest = static_cast<int>(dest_rng.weighted_index(cum_weights));
      if (window.contains(now)) ++stats.arrivals;
      if (static_cast<int>(queue.size()) == K) {
        if (window.contains(now)) ++stats.blocked;
        continue;
      }
      queue.push_back(Packet{dest, now, 0});
      if (!transmitting) start_batch(0);  // queue was empty and idle
    }
  }
  advance_to(duration_s);
  if (!window_open) {
    window_open = true;
    stats.initial_queue = queue.size();
  }
  stats.final_queue = queue.size();
  stats.sim_time = duration_s - warmup_s;

  if (stats.initial_queue + stats.arrivals !=
      stats.blocked + stats.delivered + stats.final_queue)
    fail(Errc::internal, "packet conservation violated");
  return stats;
}

Metrics measured_metrics(const SimStats& stats, const ValidatedConfig& config) {
  if (stats.delivered == 0)
    fail(Errc::no_deliveries, "no packets were delivered in the window");
  Metrics m;
  m.blocking = stats.arrivals == 0
                   ? 0.0
                   : static_cast<double>(stats.blocked) /
                         static_cast<double>(stats.arrivals);
  m.throughput_bps =
      static_cast<double>(stats.delivered) * config.frame().l_d / stats.sim_time;
  m.mean_delay_s = stats.sum_delay / static_cast<double>(stats.delivered);
  m.mean_queue = stats.time_weighted_queue / stats.sim_time;
  std::uint64_t n = 0, weighted = 0;
  for (std::size_t i = 0; i < stats.batch_size_histogram.size(); ++i) {
    n += stats.batch_size_histogram[i];
    weighted += i * stats.batch_size_histogram[i];
  }
  m.mean_batch = n == 0 ? 0.0
                        : static_cast<double>(weighted) / static_cast<double>(n);
  return m;
}

}  // namespace mpt
