#include "mpt.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <string>

#include "mpt/config.hpp"
#include "mpt/markov.hpp"
#include "mpt/simulator.hpp"

struct mpt_config_t {
  mpt::ValidatedConfig config;
};

struct mpt_analysis_t {
  mpt::ChainSolution solution;
};

struct mpt_sim_t {
  mpt::SimStats stats;
  mpt::Metrics metrics{};
  bool has_metrics = false;
  int states = 0;
};

namespace {

thread_local std::string g_last_error = "";

mpt_status status_for(mpt::Errc code) {
  using mpt::Errc;
  switch (code) {
    case Errc::parse_error:
    case Errc::bad_field:
      return MPT_ERR_PARSE;
    case Errc::bad_parameter:
    case Errc::smax_exceeds_antennas:
    case Errc::buffer_too_small:
    case Errc::rates_not_ascending:
    case Errc::threshold_mismatch:
    case Errc::thresholds_not_ascending:
    case Errc::bad_snr:
    case Errc::bad_traffic_weights:
      return MPT_ERR_INVALID_CONFIG;
    case Errc::heterogeneous_traffic:
      return MPT_ERR_UNSUPPORTED;
    case Errc::bad_state:
    case Errc::bad_batch_size:
    case Errc::empty_queue:
    case Errc::invalid_composition:
    case Errc::invalid_duration:
      return MPT_ERR_BAD_ARGUMENT;
    case Errc::io_error:
      return MPT_ERR_IO;
    case Errc::combinatorics_bound:
    case Errc::enumeration_too_large:
    case Errc::subset_explosion:
    case Errc::not_converged:
    case Errc::lambda_zero:
    case Errc::negative_mass:
    case Errc::division_by_zero:
    case Errc::no_deliveries:
      return MPT_ERR_NUMERIC;
    case Errc::spec_error:
    case Errc::internal:
      return MPT_ERR_INTERNAL;
  }
  return MPT_ERR_INTERNAL;
}

template <typename Fn>
mpt_status guarded(Fn&& fn) {
  try {
    fn();
    return MPT_OK;
  } catch (const mpt::Error& e) {
    g_last_error = std::string(mpt::errc_name(e.code())) + ": " + e.what();
    return status_for(e.code());
  } catch (const std::exception& e) {
    g_last_error = std::string("internal: ") + e.what();
    return MPT_ERR_INTERNAL;
  }
}

mpt_status arg_error(const char* what) {
  g_last_error = std::string("bad_argument: ") + what;
  return MPT_ERR_BAD_ARGUMENT;
}

void fill_metrics(const mpt::Metrics& m, double* out) {
  out[MPT_METRIC_BLOCKING] = m.blocking;
  out[MPT_METRIC_THROUGHPUT_BPS] = m.throughput_bps;
  out[MPT_METRIC_MEAN_QUEUE] = m.mean_queue;
  out[MPT_METRIC_MEAN_DELAY_S] = m.mean_delay_s;
  out[MPT_METRIC_MEAN_BATCH] = m.mean_batch;
}

mpt_status copy_vector(const std::vector<double>& v, double* out, int len) {
  if (!out || len < static_cast<int>(v.size()))
    return arg_error("output buffer too small");
  std::memcpy(out, v.data(), v.size() * sizeof(double));
  return MPT_OK;
}

}  // namespace

extern "C" {

const char* mpt_version(void) { return "1.0.0"; }

const char* mpt_last_error(void) { return g_last_error.c_str(); }

mpt_status mpt_config_from_json(const char* json_text,
                                mpt_config_t** out_config) {
  if (!json_text || !out_config) return arg_error("null argument");
  *out_config = nullptr;
  return guarded([&] {
    *out_config = new mpt_config_t{mpt::load_config_json(json_text)};
  });
}

mpt_status mpt_config_from_file(const char* path, mpt_config_t** out_config) {
  if (!path || !out_config) return arg_error("null argument");
  *out_config = nullptr;
  return guarded([&] {
    *out_config = new mpt_config_t{mpt::load_config_file(path)};
  });
}

void mpt_config_free(mpt_config_t* config) { delete config; }

int mpt_config_n_nodes(const mpt_config_t* c) {
  return c ? c->config.n_nodes() : 0;
}
int mpt_config_n_antennas(const mpt_config_t* c) {
  return c ? c->config.n_antennas() : 0;
}
int mpt_config_buffer_size(const mpt_config_t* c) {
  return c ? c->config.buffer_size() : 0;
}
int mpt_config_s_max(const mpt_config_t* c) {
  return c ? c->config.s_max() : 0;
}
double mpt_config_aggregate_rate(const mpt_config_t* c) {
  return c ? c->config.aggregate_rate() : 0.0;
}
double mpt_config_packet_error_prob(const mpt_config_t* c) {
  return c ? c->config.packet_error_prob() : 0.0;
}
double mpt_config_payload_bits(const mpt_config_t* c) {
  return c ? c->config.frame().l_d : 0.0;
}
int mpt_config_ideal_channel(const mpt_config_t* c) {
  return c && c->config.ideal_channel() ? 1 : 0;
}
int mpt_config_homogeneous_traffic(const mpt_config_t* c) {
  return c && c->config.homogeneous_traffic() ? 1 : 0;
}

mpt_status mpt_analyze(const mpt_config_t* config,
                       mpt_analysis_t** out_analysis) {
  if (!config || !out_analysis) return arg_error("null argument");
  *out_analysis = nullptr;
  return guarded([&] {
    *out_analysis = new mpt_analysis_t{mpt::analyze(config->config)};
  });
}

void mpt_analysis_free(mpt_analysis_t* analysis) { delete analysis; }

mpt_status mpt_analysis_metrics(const mpt_analysis_t* analysis,
                                double* out_metrics) {
  if (!analysis || !out_metrics) return arg_error("null argument");
  fill_metrics(analysis->solution.metrics, out_metrics);
  return MPT_OK;
}

int mpt_analysis_states(const mpt_analysis_t* analysis) {
  return analysis ? analysis->solution.transition.states : 0;
}

mpt_status mpt_analysis_departure_distribution(const mpt_analysis_t* analysis,
                                               double* out, int len) {
  if (!analysis) return arg_error("null analysis");
  return copy_vector(analysis->solution.pi_departure, out, len);
}

mpt_status mpt_analysis_steady_state(const mpt_analysis_t* analysis,
                                     double* out, int len) {
  if (!analysis) return arg_error("null analysis");
  return copy_vector(analysis->solution.pi_steady, out, len);
}

double mpt_analysis_expected_epoch_s(const mpt_analysis_t* analysis) {
  return analysis ? analysis->solution.epochs.expected
                  : std::numeric_limits<double>::quiet_NaN();
}

mpt_status mpt_simulate(const mpt_config_t* config, uint64_t seed,
                        double duration_s, double warmup_s,
                        mpt_sim_t** out_sim) {
  if (!config || !out_sim) return arg_error("null argument");
  *out_sim = nullptr;
  return guarded([&] {
    auto sim = std::make_unique<mpt_sim_t>();
    sim->stats = mpt::simulate(config->config, seed, duration_s, warmup_s);
    sim->states = config->config.buffer_size() + 1;
    if (sim->stats.delivered > 0) {
      sim->metrics = mpt::measured_metrics(sim->stats, config->config);
      sim->has_metrics = true;
    }
    *out_sim = sim.release();
  });
}

void mpt_sim_free(mpt_sim_t* sim) { delete sim; }

mpt_status mpt_sim_metrics(const mpt_sim_t* sim, double* out_metrics) {
  if (!sim || !out_metrics) return arg_error("null argument");
  if (!sim->has_metrics) {
    g_last_error = "no_deliveries: no packets were delivered in the window";
    return MPT_ERR_NUMERIC;
  }
  fill_metrics(sim->metrics, out_metrics);
  return MPT_OK;
}

uint64_t mpt_sim_counter(const mpt_sim_t* sim, mpt_counter which) {
  if (!sim) return 0;
  switch (which) {
    case MPT_COUNT_ARRIVALS: return sim->stats.arrivals;
    case MPT_COUNT_BLOCKED: return sim->stats.blocked;
    case MPT_COUNT_DELIVERED: return sim->stats.delivered;
    case MPT_COUNT_BATCHES: return sim->stats.batches;
    case MPT_COUNT_INITIAL_QUEUE: return sim->stats.initial_queue;
    case MPT_COUNT_FINAL_QUEUE: return sim->stats.final_queue;
  }
  return 0;
}

double mpt_sim_time_s(const mpt_sim_t* sim) {
  return sim ? sim->stats.sim_time : 0.0;
}

mpt_status mpt_sim_occupancy_time(const mpt_sim_t* sim, double* out, int len) {
  if (!sim) return arg_error("null sim");
  return copy_vector(sim->stats.occupancy_time_histogram, out, len);
}

}  // extern "C"
