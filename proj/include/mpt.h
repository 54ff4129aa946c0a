/* C interface to the multiuser multi-packet transmission queueing toolkit.
 *
 * Everything is exposed through opaque handles plus status codes; on any
 * failure the per-thread message from mpt_last_error() describes what went
 * wrong. Handles are independent of each other and may be used from
 * different threads; a single handle must not be mutated concurrently
 * (configs are immutable after creation, so sharing them is fine).
 */
#ifndef MPT_H
#define MPT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MPT_BUILD)
#define MPT_API __declspec(dllexport)
#else
#define MPT_API __declspec(dllimport)
#endif
#else
#define MPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mpt_config_t mpt_config_t;
typedef struct mpt_analysis_t mpt_analysis_t;
typedef struct mpt_sim_t mpt_sim_t;

typedef enum mpt_status {
  MPT_OK = 0,
  MPT_ERR_PARSE = 1,          /* malformed JSON or bad field */
  MPT_ERR_INVALID_CONFIG = 2, /* a scenario invariant is violated */
  MPT_ERR_UNSUPPORTED = 3,    /* e.g. analytic solve of heterogeneous traffic */
  MPT_ERR_BAD_ARGUMENT = 4,   /* null handle, bad buffer size, bad enum */
  MPT_ERR_NUMERIC = 5,        /* solver or statistics failure */
  MPT_ERR_IO = 6,
  MPT_ERR_INTERNAL = 7
} mpt_status;

/* Indices into the metric arrays returned below. */
typedef enum mpt_metric {
  MPT_METRIC_BLOCKING = 0,
  MPT_METRIC_THROUGHPUT_BPS = 1,
  MPT_METRIC_MEAN_QUEUE = 2,
  MPT_METRIC_MEAN_DELAY_S = 3,
  MPT_METRIC_MEAN_BATCH = 4,
  MPT_METRIC_COUNT = 5
} mpt_metric;

typedef enum mpt_counter {
  MPT_COUNT_ARRIVALS = 0,
  MPT_COUNT_BLOCKED = 1,
  MPT_COUNT_DELIVERED = 2,
  MPT_COUNT_BATCHES = 3,
  MPT_COUNT_INITIAL_QUEUE = 4,
  MPT_COUNT_FINAL_QUEUE = 5
} mpt_counter;

MPT_API const char* mpt_version(void);

/* Message for the most recent failure on this thread. Never NULL. */
MPT_API const char* mpt_last_error(void);

/* --- scenario configs ---------------------------------------------------- */

/* Parses and validates a JSON scenario document. */
MPT_API mpt_status mpt_config_from_json(const char* json_text,
                                        mpt_config_t** out_config);
MPT_API mpt_status mpt_config_from_file(const char* path,
                                        mpt_config_t** out_config);
MPT_API void mpt_config_free(mpt_config_t* config);

MPT_API int mpt_config_n_nodes(const mpt_config_t* config);
MPT_API int mpt_config_n_antennas(const mpt_config_t* config);
MPT_API int mpt_config_buffer_size(const mpt_config_t* config);
MPT_API int mpt_config_s_max(const mpt_config_t* config);
MPT_API double mpt_config_aggregate_rate(const mpt_config_t* config);
MPT_API double mpt_config_packet_error_prob(const mpt_config_t* config);
MPT_API double mpt_config_payload_bits(const mpt_config_t* config);
MPT_API int mpt_config_ideal_channel(const mpt_config_t* config);
MPT_API int mpt_config_homogeneous_traffic(const mpt_config_t* config);

/* --- analytic model ------------------------------------------------------ */

/* Solves the embedded chain and derives all metrics. Requires homogeneous
 * traffic weights (MPT_ERR_UNSUPPORTED otherwise). */
MPT_API mpt_status mpt_analyze(const mpt_config_t* config,
                               mpt_analysis_t** out_analysis);
MPT_API void mpt_analysis_free(mpt_analysis_t* analysis);

/* out_metrics must hold MPT_METRIC_COUNT doubles. */
MPT_API mpt_status mpt_analysis_metrics(const mpt_analysis_t* analysis,
                                        double* out_metrics);
/* Number of occupancy states (buffer size + 1). */
MPT_API int mpt_analysis_states(const mpt_analysis_t* analysis);
/* Occupancy distribution just after departures; len >= states. */
MPT_API mpt_status mpt_analysis_departure_distribution(
    const mpt_analysis_t* analysis, double* out, int len);
/* Occupancy distribution at arbitrary times; len >= states. */
MPT_API mpt_status mpt_analysis_steady_state(const mpt_analysis_t* analysis,
                                             double* out, int len);
/* Expected inter-departure epoch, seconds. */
MPT_API double mpt_analysis_expected_epoch_s(const mpt_analysis_t* analysis);

/* --- simulator ----------------------------------------------------------- */

/* Runs one event-driven simulation over [0, duration], recording statistics
 * from warmup onward. Identical arguments give bit-identical results. */
MPT_API mpt_status mpt_simulate(const mpt_config_t* config, uint64_t seed,
                                double duration_s, double warmup_s,
                                mpt_sim_t** out_sim);
MPT_API void mpt_sim_free(mpt_sim_t* sim);

/* Sample metrics; MPT_ERR_NUMERIC when nothing was delivered. out_metrics
 * must hold MPT_METRIC_COUNT doubles. */
MPT_API mpt_status mpt_sim_metrics(const mpt_sim_t* sim, double* out_metrics);
MPT_API uint64_t mpt_sim_counter(const mpt_sim_t* sim, mpt_counter which);
MPT_API double mpt_sim_time_s(const mpt_sim_t* sim);
/* Seconds spent at each occupancy level; len >= buffer size + 1. */
MPT_API mpt_status mpt_sim_occupancy_time(const mpt_sim_t* sim, double* out,
                                          int len);

#ifdef __cplusplus
}
#endif

#endif /* MPT_H */
