#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <vector>

#include "mpt/config.hpp"

namespace mpt {

// How many of the q buffered packets are eligible for one space-batch,
// i.e. the number of distinct destinations represented in the queue when
// each packet independently targets one of N nodes uniformly.
struct EligibleCountDistribution {
  int q = 0;
  int n_nodes = 0;
  std::vector<double> probs;  // probs[xi], xi in [1, min(q,N)]; probs[0] = 0

  double prob(int xi) const {
    return (xi >= 1 && xi < static_cast<int>(probs.size())) ? probs[xi] : 0.0;
  }
  int max_xi() const { return static_cast<int>(probs.size()) - 1; }
};

// p(m|q): probability that the batch scheduled after a departure leaving q
// packets carries m of them. Row q covers m in [1, s(q)] with the mass of
// all eligible counts >= s_max folded into m = s_max.
struct BatchSizeDistribution {
  int s_max = 1;
  std::vector<std::vector<double>> rows;  // rows[q][m]; rows[q][0] unused

  double p(int m, int q) const {
    if (q < 0 || q >= static_cast<int>(rows.size())) return 0.0;
    if (m < 1 || m >= static_cast<int>(rows[q].size())) return 0.0;
    return rows[q][m];
  }
  int s_of(int q) const { return std::max(1, std::min(q, s_max)); }
  int max_q() const { return static_cast<int>(rows.size()) - 1; }
};

// Exact arithmetic guard: the Stirling table is computed in big integers, so
// precision is never lost, but the table is refused past this size.
inline constexpr int kMaxExactOccupancy = 512;

/// q! / prod(parts[i]!) as an exact integer. Parts must be positive and sum
/// to q (InvalidComposition otherwise).
mpz_class multiset_permutations(int q, const std::vector<int>& parts);

/// Pr{exactly xi distinct destinations among q uniform draws over N nodes},
/// as exact rationals indexed by xi (index 0 unused). Computed as
/// C(N,xi) * xi! * S(q,xi) / N^q with S the Stirling number of the 2nd kind.
std::vector<mpq_class> eligible_count_distribution_exact(int q, int n_nodes);

EligibleCountDistribution eligible_count_distribution(int q, int n_nodes);

/// p(m|q) for every q in [0, K]; see BatchSizeDistribution.
BatchSizeDistribution batch_size_distribution(const ValidatedConfig& config);

/// Brute-force oracle: walks all N^q destination assignments and counts the
/// distinct destinations in each. Refuses N^q > max_arrangements.
std::vector<mpq_class> enumerate_oracle_exact(
    int q, int n_nodes, std::uint64_t max_arrangements = 10'000'000);

EligibleCountDistribution enumerate_oracle(
    int q, int n_nodes, std::uint64_t max_arrangements = 10'000'000);

}  // namespace mpt
