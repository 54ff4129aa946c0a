#include "mpt/markov.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "mpt/frame.hpp"

namespace mpt {

double TransitionMatrix::row_sum(int i) const {
  double s = 0.0;
  for (int j = 0; j < states; ++j) s += at(i, j);
  return s;
}

double conditional_transition(const ValidatedConfig& config, int i, int j,
                              int m, int y, double rate_bps) {
  const int K = config.buffer_size();
  if (i < 0 || i > K || j < 0 || j > K)
    fail(Errc::bad_state, "state index outside [0, K]");
  if (m < 1 || m > config.s_of(i))
    fail(Errc::bad_state, "batch size outside [1, s(i)]");
  if (y < 0 || y > m)
    fail(Errc::bad_state, "error count outside [0, m]");
  if (!(rate_bps > 0.0)) fail(Errc::bad_state, "rate must be positive");

  const int i_eff = std::max(i, 1);
  const int low = i_eff - m + y;   // no arrivals during the frame
  const int top = K - m + y;       // buffer filled up during the frame
  if (j < low || j > top) return 0.0;

  const double mean = config.aggregate_rate() * frame_duration(config, m, rate_bps);
  if (j < top) return poisson_pmf(mean, j - low);
  return poisson_tail(mean, top - low);
}

namespace {

// Poisson pmf and tail tables for one (batch size, rate) pair.
struct ArrivalTables {
  std::vector<double> pmf;   // pmf[v], v in [0, K]
  std::vector<double> tail;  // tail[v] = Pr{V >= v}, v in [0, K+1]
};

ArrivalTables arrival_tables(double mean, int K) {
  ArrivalTables t;
  t.pmf.resize(K + 1);
  t.tail.resize(K + 2);
  for (int v = 0; v <= K; ++v) t.pmf[v] = poisson_pmf(mean, v);
  for (int v = 0; v <= K + 1; ++v) t.tail[v] = poisson_tail(mean, v);
  return t;
}

}  // namespace

TransitionMatrix build_transition_matrix(const ValidatedConfig& config,
                                         const BatchSizeDistribution& batch,
                                         const RateDistribution& rates,
                                         const ErrorLaw& errors) {
  const int K = config.buffer_size();
  const int n_rates = config.n_rates();
  const int max_m = config.max_batch();

  std::vector<std::vector<ArrivalTables>> tables(max_m + 1);
  for (int m = 1; m <= max_m; ++m) {
    tables[m].resize(n_rates);
    for (int l = 0; l < n_rates; ++l) {
      const double mean = config.aggregate_rate() *
                          frame_duration(config, m, config.rates()[l]);
      tables[m][l] = arrival_tables(mean, K);
    }
  }

  TransitionMatrix P;
  P.states = K + 1;
  P.p.assign(static_cast<std::size_t>(K + 1) * (K + 1), 0.0);

  for (int i = 0; i <= K; ++i) {
    const int i_eff = std::max(i, 1);
    for (int m = 1; m <= batch.s_of(i); ++m) {
      const double pm = batch.p(m, i);
      if (pm == 0.0) continue;
      for (int l = 0; l < n_rates; ++l) {
        const double phi = rates.at(m, l);
        if (phi == 0.0) continue;
        const ArrivalTables& tab = tables[m][l];
        for (int y = 0; y <= m; ++y) {
          const double w = pm * phi * errors.at(y, m);
          if (w == 0.0) continue;
          const int low = i_eff - m + y;
          const int top = K - m + y;
          for (int j = low; j < top; ++j) P.at(i, j) += w * tab.pmf[j - low];
          P.at(i, top) += w * tab.tail[top - low];
        }
      }
    }
  }
  return P;
}

double fixed_point_residual(const TransitionMatrix& P,
                            const std::vector<double>& pi) {
  const int n = P.states;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double v = 0.0;
    for (int i = 0; i < n; ++i) v += pi[i] * P.at(i, j);
    worst = std::max(worst, std::abs(v - pi[j]));
  }
  return worst;
}

namespace {

void clamp_and_normalize(std::vector<double>& pi) {
  double sum = 0.0;
  for (double& x : pi) {
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  if (!(sum > 0.0)) fail(Errc::not_converged, "stationary vector collapsed");
  for (double& x : pi) x /= sum;
}

std::vector<double> power_iteration(const TransitionMatrix& P,
                                    double residual_tol, int max_iters) {
  const int n = P.states;
  std::vector<double> pi(n, 1.0 / n), next(n, 0.0);
  for (int it = 0; it < max_iters; ++it) {
    // damped step keeps periodic chains converging
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      if (pi[i] == 0.0) continue;
      for (int j = 0; j < n; ++j) next[j] += pi[i] * P.at(i, j);
    }
    double delta = 0.0;
    for (int j = 0; j < n; ++j) {
      next[j] = 0.5 * (next[j] + pi[j]);
      delta = std::max(delta, std::abs(next[j] - pi[j]));
    }
    pi.swap(next);
    if (delta < residual_tol * 0.25 && fixed_point_residual(P, pi) <= residual_tol)
      return pi;
  }
  fail(Errc::not_converged, "power iteration did not reach the residual target");
}

}  // namespace

std::vector<double> solve_departure_distribution(const TransitionMatrix& P,
                                                 double residual_tol) {
  const int n = P.states;
  if (n == 1) return {1.0};

  // pi (P - I) = 0 with sum(pi) = 1, solved as least squares on the
  // transposed system with the normalization row appended.
  Eigen::MatrixXd A(n + 1, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      A(j, i) = P.at(i, j) - (i == j ? 1.0 : 0.0);
  A.row(n).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  b(n) = 1.0;

  Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  std::vector<double> pi(n);
  bool sane = true;
  for (int i = 0; i < n; ++i) {
    pi[i] = x(i);
    if (!std::isfinite(pi[i]) || pi[i] < -1e-9) sane = false;
  }
  if (sane) {
    clamp_and_normalize(pi);
    if (fixed_point_residual(P, pi) <= residual_tol) return pi;
  }
  // fallback: residual threshold 1e-12, capped iterations
  return power_iteration(P, 1e-12, 1'000'000);
}

EpochDurations epoch_durations(const ValidatedConfig& config,
                               const BatchSizeDistribution& batch,
                               const RateDistribution& rates,
                               const std::vector<double>& pi_departure) {
  const double lambda = config.aggregate_rate();
  if (!(lambda > 0.0))
    fail(Errc::lambda_zero, "epoch durations need a positive arrival rate");
  const int K = config.buffer_size();
  const int n_rates = config.n_rates();

  EpochDurations out;
  out.service_by_state.assign(K + 1, 0.0);
  out.epoch_by_state.assign(K + 1, 0.0);
  for (int i = 0; i <= K; ++i) {
    double service = 0.0;
    for (int m = 1; m <= batch.s_of(i); ++m) {
      const double pm = batch.p(m, i);
      if (pm == 0.0) continue;
      for (int l = 0; l < n_rates; ++l) {
        const double phi = rates.at(m, l);
        if (phi == 0.0) continue;
        service += pm * phi * frame_duration(config, m, config.rates()[l]);
      }
    }
    out.service_by_state[i] = service;
    // state 0 first waits for the arrival that triggers the batch
    out.epoch_by_state[i] = (i == 0 ? 1.0 / lambda : 0.0) + service;
    out.expected += pi_departure[i] * out.epoch_by_state[i];
  }
  return out;
}

std::vector<double> steady_state_distribution(
    const ValidatedConfig& config, const BatchSizeDistribution& batch,
    const RateDistribution& rates, const ErrorLaw& errors,
    const std::vector<double>& pi_departure, const EpochDurations& epochs) {
  const int K = config.buffer_size();
  const int n_rates = config.n_rates();
  const int max_m = config.max_batch();
  const double lambda = config.aggregate_rate();
  if (!(lambda > 0.0)) fail(Errc::lambda_zero, "PASTA needs a positive rate");
  const double denom = lambda * epochs.expected;

  std::vector<std::vector<ArrivalTables>> tables(max_m + 1);
  for (int m = 1; m <= max_m; ++m) {
    tables[m].resize(n_rates);
    for (int l = 0; l < n_rates; ++l) {
      const double mean = config.aggregate_rate() *
                          frame_duration(config, m, config.rates()[l]);
      tables[m][l] = arrival_tables(mean, K);
    }
  }

  std::vector<double> pi_s(K + 1, 0.0);
  for (int k = 0; k < K; ++k) {
    double acc = 0.0;
    for (int i = 0; i <= k; ++i) {
      if (pi_departure[i] == 0.0) continue;
      const int i_eff = std::max(i, 1);
      double per_state = 0.0;
      for (int m = 1; m <= batch.s_of(i); ++m) {
        const double pm = batch.p(m, i);
        if (pm == 0.0) continue;
        for (int y = 0; y <= m; ++y) {
          const double py = errors.at(y, m);
          if (py == 0.0) continue;
          for (int l = 0; l < n_rates; ++l) {
            const double phi = rates.at(m, l);
            if (phi == 0.0) continue;
            // sum of p_{i,j}(m,y,r) over j >= k+1-m+y: the support also
            // shifts by y, so the tail argument is y-free
            const int arg = (k + 1 - m + y) - (i_eff - m + y);
            per_state += pm * py * phi * tables[m][l].tail[std::max(arg, 0)];
          }
        }
      }
      acc += pi_departure[i] * per_state;
    }
    pi_s[k] = acc / denom;
    if (pi_s[k] < -1e-9)
      fail(Errc::negative_mass, "steady-state mass came out negative");
    if (pi_s[k] < 0.0) pi_s[k] = 0.0;
  }

  // close the distribution at the full-buffer state (compensated sum)
  double sum = 0.0, comp = 0.0;
  for (int k = 0; k < K; ++k) {
    const double t = sum + pi_s[k];
    if (std::abs(sum) >= std::abs(pi_s[k]))
      comp += (sum - t) + pi_s[k];
    else
      comp += (pi_s[k] - t) + sum;
    sum = t;
  }
  pi_s[K] = std::max(0.0, 1.0 - (sum + comp));
  return pi_s;
}

Metrics compute_metrics(const ValidatedConfig& config,
                        const std::vector<double>& pi_departure,
                        const std::vector<double>& pi_steady,
                        const BatchSizeDistribution& batch) {
  const int K = config.buffer_size();
  Metrics m;
  m.blocking = pi_steady[K];
  const double accepted_rate = config.aggregate_rate() * (1.0 - m.blocking);
  m.throughput_bps = accepted_rate * config.frame().l_d;
  for (int q = 1; q <= K; ++q) m.mean_queue += q * pi_steady[q];
  if (accepted_rate == 0.0)
    fail(Errc::division_by_zero, "no accepted traffic: mean delay undefined");
  m.mean_delay_s = m.mean_queue / accepted_rate;
  for (int q = 0; q <= K; ++q) {
    double batch_mean = 0.0;
    for (int mm = 1; mm <= batch.s_of(q); ++mm)
      batch_mean += mm * batch.p(mm, q);
    m.mean_batch += pi_departure[q] * batch_mean;
  }
  return m;
}

ChainSolution analyze(const ValidatedConfig& config) {
  if (!config.homogeneous_traffic())
    fail(Errc::heterogeneous_traffic,
         "the analytical model requires homogeneous traffic weights");
  ChainSolution sol;
  const BatchSizeDistribution batch = batch_size_distribution(config);
  const RateDistribution rates = rate_distribution(config);
  const ErrorLaw errors =
      ErrorLaw::build(config.packet_error_prob(), config.max_batch());
  sol.transition = build_transition_matrix(config, batch, rates, errors);
  sol.pi_departure = solve_departure_distribution(sol.transition);
  sol.epochs = epoch_durations(config, batch, rates, sol.pi_departure);
  sol.pi_steady = steady_state_distribution(config, batch, rates, errors,
                                            sol.pi_departure, sol.epochs);
  sol.metrics = compute_metrics(config, sol.pi_departure, sol.pi_steady, batch);
  return sol;
}

}  // namespace mpt
