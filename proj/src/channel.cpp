#include "mpt/channel.hpp"

#include <cmath>

#include "mpt/frame.hpp"

namespace mpt {

double snr_cdf(const SnrModel& model, int node, int m, double gamma_linear) {
  if (node < 0 || node >= static_cast<int>(model.mean_snr_linear.size()))
    fail(Errc::bad_state, "node index out of range");
  if (m < 1 || m > model.n_antennas)
    fail(Errc::bad_batch_size,
         "batch size " + std::to_string(m) + " outside [1, n_antennas]");
  if (std::isnan(gamma_linear) || gamma_linear < 0.0)
    fail(Errc::bad_parameter, "gamma must be >= 0");
  if (std::isinf(gamma_linear)) return 1.0;

  // Erlang CDF with shape M-m+1: one minus the Poisson head at gamma/scale.
  const double x = gamma_linear / model.scale(node, m);
  const int shape = model.n_antennas - m + 1;
  double head = 0.0;
  for (int k = 0; k < shape; ++k) head += poisson_pmf(x, k);
  return std::min(1.0, std::max(0.0, 1.0 - head));
}

std::vector<double> feasible_rate_probs(const SnrModel& model, int node, int m,
                                        std::span<const double> upper_linear) {
  std::vector<double> theta(upper_linear.size(), 0.0);
  double prev = 0.0;  // F(0) = 0
  for (std::size_t i = 0; i < upper_linear.size(); ++i) {
    const double cur = std::isinf(upper_linear[i])
                           ? 1.0
                           : snr_cdf(model, node, m, upper_linear[i]);
    theta[i] = std::max(0.0, cur - prev);
    prev = cur;
  }
  // top interval always runs to +inf
  theta.back() += std::max(0.0, 1.0 - prev);
  return theta;
}

double batch_rate_prob(const SnrModel& model, std::span<const int> batch,
                       std::span<const double> upper_linear, int rate_index) {
  if (batch.empty()) fail(Errc::bad_state, "batch must be nonempty");
  const int m = static_cast<int>(batch.size());
  const int n_rates = static_cast<int>(upper_linear.size());
  if (rate_index < 0 || rate_index >= n_rates)
    fail(Errc::bad_state, "rate index out of range");

  // min over the batch equals i  <=>  all >= i, not all >= i+1
  double all_ge_i = 1.0, all_ge_next = 1.0;
  for (int node : batch) {
    const auto theta = feasible_rate_probs(model, node, m, upper_linear);
    double tail_i = 0.0, tail_next = 0.0;
    for (int j = rate_index; j < n_rates; ++j) tail_i += theta[j];
    for (int j = rate_index + 1; j < n_rates; ++j) tail_next += theta[j];
    all_ge_i *= tail_i;
    all_ge_next *= tail_next;
  }
  return std::max(0.0, all_ge_i - all_ge_next);
}

double RateDistribution::at(int m, int rate_index) const {
  if (m < 1 || m >= static_cast<int>(phi.size()))
    fail(Errc::bad_batch_size,
         "no rate distribution for batch size " + std::to_string(m));
  return phi[m][rate_index];
}

namespace {

// phi_{r|S} for all rates at once, from per-node tail products.
void accumulate_subset(const std::vector<std::vector<double>>& tails,
                       std::span<const int> subset, std::vector<double>& out) {
  const int n_rates = static_cast<int>(out.size());
  double prev = 0.0;
  for (int i = n_rates - 1; i >= 0; --i) {
    double prod = 1.0;
    for (int node : subset) prod *= tails[node][i];
    out[i] += std::max(0.0, prod - prev);
    prev = prod;
  }
}

}  // namespace

RateDistribution rate_distribution(const ValidatedConfig& config,
                                   std::uint64_t max_subsets) {
  const int n_rates = config.n_rates();
  const int max_m = config.max_batch();
  RateDistribution dist;
  dist.phi.assign(max_m + 1, std::vector<double>(n_rates, 0.0));

  if (config.ideal_channel()) {
    for (int m = 1; m <= max_m; ++m) dist.phi[m][n_rates - 1] = 1.0;
    return dist;
  }

  const SnrModel model = SnrModel::from_config(config);
  const auto& uppers = config.rate_upper_snr_linear();
  const int n = config.n_nodes();

  for (int m = 1; m <= max_m; ++m) {
    // tails[n][i] = Pr{node n supports rate >= i} under m streams
    std::vector<std::vector<double>> tails(n, std::vector<double>(n_rates, 0.0));
    for (int node = 0; node < n; ++node) {
      const auto theta = feasible_rate_probs(model, node, m, uppers);
      double acc = 0.0;
      for (int i = n_rates - 1; i >= 0; --i) {
        acc += theta[i];
        tails[node][i] = acc;
      }
    }

    auto& row = dist.phi[m];
    if (config.homogeneous_snr()) {
      std::vector<int> subset(m);
      for (int i = 0; i < m; ++i) subset[i] = i;
      accumulate_subset(tails, subset, row);
      continue;
    }

    // C(n,k) with k = min(m, n-m): same count, and the partial products
    // stay below the final value, so the bound check is exact.
    std::uint64_t n_subsets = 1;
    const int k = std::min(m, n - m);
    for (int i = 0; i < k; ++i) {
      n_subsets = n_subsets * static_cast<std::uint64_t>(n - i) /
                  static_cast<std::uint64_t>(i + 1);
      if (n_subsets > max_subsets)
        fail(Errc::subset_explosion,
             "C(N,m) exceeds the subset enumeration bound of " +
                 std::to_string(max_subsets));
    }

    std::vector<int> subset(m);
    for (int i = 0; i < m; ++i) subset[i] = i;
    while (true) {
      accumulate_subset(tails, subset, row);
      int i = m - 1;
      while (i >= 0 && subset[i] == n - m + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < m; ++j) subset[j] = subset[j - 1] + 1;
    }
    for (double& v : row) v /= static_cast<double>(n_subsets);
  }
  return dist;
}

std::vector<double> error_law(double p_e, int m) {
  if (!(p_e >= 0.0 && p_e <= 1.0))
    fail(Errc::bad_parameter, "p_e must lie in [0,1]");
  if (m < 0) fail(Errc::bad_batch_size, "m must be >= 0");
  std::vector<double> psi(m + 1, 0.0);
  // binomial row via the multiplicative recurrence on C(m,y)
  double binom = 1.0;
  for (int y = 0; y <= m; ++y) {
    psi[y] = binom * std::pow(p_e, y) * std::pow(1.0 - p_e, m - y);
    binom = binom * static_cast<double>(m - y) / static_cast<double>(y + 1);
  }
  return psi;
}

ErrorLaw ErrorLaw::build(double p_e, int max_m) {
  ErrorLaw law;
  law.p_e = p_e;
  law.psi.resize(max_m + 1);
  for (int m = 0; m <= max_m; ++m) law.psi[m] = error_law(p_e, m);
  return law;
}

double sample_snr(const SnrModel& model, int node, int m, Rng& rng) {
  if (m < 1 || m > model.n_antennas)
    fail(Errc::bad_batch_size, "batch size outside [1, n_antennas]");
  return rng.erlang(model.n_antennas - m + 1, model.scale(node, m));
}

int rate_index_for_snr(double gamma_linear,
                       std::span<const double> upper_linear) {
  const int n_rates = static_cast<int>(upper_linear.size());
  for (int i = 0; i < n_rates - 1; ++i)
    if (gamma_linear <= upper_linear[i]) return i;
  return n_rates - 1;
}

}  // namespace mpt
