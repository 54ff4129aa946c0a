#include "mpt/combinatorics.hpp"

#include <numeric>

namespace mpt {

namespace {

// S(n,k) for n in [0,q], k in [0,min(n,kmax)], via the standard recurrence
// S(n,k) = k*S(n-1,k) + S(n-1,k-1) in exact integers.
std::vector<std::vector<mpz_class>> stirling2_table(int q, int kmax) {
  std::vector<std::vector<mpz_class>> s(q + 1);
  s[0] = {mpz_class(1)};
  for (int n = 1; n <= q; ++n) {
    int kn = std::min(n, kmax);
    s[n].assign(kn + 1, mpz_class(0));
    const int kprev = std::min(n - 1, kmax);
    for (int k = 1; k <= kn; ++k) {
      mpz_class v(0);
      if (k <= kprev) v = k * s[n - 1][k];
      if (k - 1 <= kprev) v += s[n - 1][k - 1];
      s[n][k] = v;
    }
  }
  return s;
}

std::vector<mpq_class> eligible_exact_from_table(
    int q, int n_nodes, const std::vector<std::vector<mpz_class>>& table) {
  const int kmax = std::min(q, n_nodes);
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), n_nodes, q);

  std::vector<mpq_class> out(kmax + 1, mpq_class(0));
  mpz_class check(0);
  for (int xi = 1; xi <= kmax; ++xi) {
    mpz_class binom, fact;
    mpz_bin_uiui(binom.get_mpz_t(), n_nodes, xi);
    mpz_fac_ui(fact.get_mpz_t(), xi);
    mpz_class num = binom * fact * table[q][xi];
    check += num;
    mpq_class p(num, denom);
    p.canonicalize();
    out[xi] = p;
  }
  if (check != denom)
    fail(Errc::internal, "eligible-count masses do not sum to N^q");
  return out;
}

std::vector<double> to_doubles(const std::vector<mpq_class>& exact) {
  std::vector<double> out(exact.size(), 0.0);
  for (std::size_t i = 0; i < exact.size(); ++i) out[i] = exact[i].get_d();
  return out;
}

}  // namespace

mpz_class multiset_permutations(int q, const std::vector<int>& parts) {
  if (q < 0) fail(Errc::invalid_composition, "q must be >= 0");
  long long sum = 0;
  for (int p : parts) {
    if (p <= 0)
      fail(Errc::invalid_composition, "composition parts must be positive");
    sum += p;
  }
  if (sum != q)
    fail(Errc::invalid_composition, "composition parts must sum to q");
  mpz_class result;
  mpz_fac_ui(result.get_mpz_t(), q);
  for (int p : parts) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), p);
    result /= f;  // exact: multinomial coefficients are integers
  }
  return result;
}

std::vector<mpq_class> eligible_count_distribution_exact(int q, int n_nodes) {
  if (q < 1) fail(Errc::bad_parameter, "q must be >= 1");
  if (n_nodes < 1) fail(Errc::bad_parameter, "n_nodes must be >= 1");
  if (q > kMaxExactOccupancy)
    fail(Errc::combinatorics_bound,
         "occupancy " + std::to_string(q) + " exceeds the exact-arithmetic bound " +
             std::to_string(kMaxExactOccupancy));
  return eligible_exact_from_table(q, n_nodes,
                                   stirling2_table(q, std::min(q, n_nodes)));
}

EligibleCountDistribution eligible_count_distribution(int q, int n_nodes) {
  EligibleCountDistribution d;
  d.q = q;
  d.n_nodes = n_nodes;
  d.probs = to_doubles(eligible_count_distribution_exact(q, n_nodes));
  return d;
}

BatchSizeDistribution batch_size_distribution(const ValidatedConfig& config) {
  const int K = config.buffer_size();
  const int N = config.n_nodes();
  const int s_max = config.s_max();
  if (K > kMaxExactOccupancy)
    fail(Errc::combinatorics_bound,
         "buffer_size exceeds the exact-arithmetic bound " +
             std::to_string(kMaxExactOccupancy));

  const auto table = stirling2_table(K, std::min(K, N));

  BatchSizeDistribution dist;
  dist.s_max = s_max;
  dist.rows.resize(K + 1);
  dist.rows[0] = {0.0, 1.0};  // empty queue: the triggering arrival goes alone
  for (int q = 1; q <= K; ++q) {
    const auto exact = eligible_exact_from_table(q, N, table);
    const int xi_max = static_cast<int>(exact.size()) - 1;
    const int sq = dist.s_of(q);
    auto& row = dist.rows[q];
    row.assign(sq + 1, 0.0);
    for (int m = 1; m <= sq; ++m) {
      if (m == s_max) {
        mpq_class tail(0);
        for (int xi = s_max; xi <= xi_max; ++xi) tail += exact[xi];
        row[m] = tail.get_d();
      } else {
        row[m] = (m <= xi_max) ? exact[m].get_d() : 0.0;
      }
    }
  }
  return dist;
}

std::vector<mpq_class> enumerate_oracle_exact(int q, int n_nodes,
                                              std::uint64_t max_arrangements) {
  if (q < 1) fail(Errc::bad_parameter, "q must be >= 1");
  if (n_nodes < 1) fail(Errc::bad_parameter, "n_nodes must be >= 1");
  std::uint64_t total = 1;
  for (int i = 0; i < q; ++i) {
    if (total > max_arrangements / static_cast<std::uint64_t>(n_nodes) + 1)
      fail(Errc::enumeration_too_large,
           "N^q exceeds the enumeration bound of " +
               std::to_string(max_arrangements));
    total *= static_cast<std::uint64_t>(n_nodes);
  }
  if (total > max_arrangements)
    fail(Errc::enumeration_too_large,
         "N^q exceeds the enumeration bound of " +
             std::to_string(max_arrangements));

  const int kmax = std::min(q, n_nodes);
  std::vector<std::uint64_t> counts(kmax + 1, 0);
  std::vector<int> digits(q, 0);
  std::vector<int> seen(n_nodes, 0);
  for (std::uint64_t it = 0;; ++it) {
    int distinct = 0;
    for (int i = 0; i < q; ++i) {
      if (seen[digits[i]] == 0) ++distinct;
      ++seen[digits[i]];
    }
    for (int i = 0; i < q; ++i) seen[digits[i]] = 0;
    ++counts[distinct];

    int pos = 0;
    while (pos < q && ++digits[pos] == n_nodes) digits[pos++] = 0;
    if (pos == q) break;
  }

  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), n_nodes, q);
  std::vector<mpq_class> out(kmax + 1, mpq_class(0));
  for (int xi = 1; xi <= kmax; ++xi) {
    mpq_class p(mpz_class(static_cast<unsigned long>(counts[xi])), denom);
    p.canonicalize();
    out[xi] = p;
  }
  return out;
}

EligibleCountDistribution enumerate_oracle(int q, int n_nodes,
                                           std::uint64_t max_arrangements) {
  EligibleCountDistribution d;
  d.q = q;
  d.n_nodes = n_nodes;
  d.probs = to_doubles(enumerate_oracle_exact(q, n_nodes, max_arrangements));
  return d;
}

}  // namespace mpt
