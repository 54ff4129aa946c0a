#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "mpt/combinatorics.hpp"
#include "test_util.hpp"

using namespace mpt;

namespace {
mpq_class frac(long num, long den) {
  mpq_class f(num, den);
  f.canonicalize();
  return f;
}
}  // namespace

TEST_CASE("multiset permutations") {
  CHECK(multiset_permutations(4, {2, 2}) == 6);
  CHECK(multiset_permutations(4, {4}) == 1);
  CHECK(multiset_permutations(4, {1, 1, 2}) == 12);
  CHECK(multiset_permutations(4, {1, 3}) == 4);
  CHECK(multiset_permutations(0, {}) == 1);
  // big enough to overflow any machine word
  mpz_class fact60, fact30;
  mpz_fac_ui(fact60.get_mpz_t(), 60);
  mpz_fac_ui(fact30.get_mpz_t(), 30);
  CHECK(multiset_permutations(60, std::vector<int>(60, 1)) == fact60);
  CHECK(multiset_permutations(60, {30, 30}) == fact60 / (fact30 * fact30));

  CHECK_THROWS_WITH_AS(multiset_permutations(4, {2, 1}), doctest::Contains("sum"),
                       Error);
  CHECK_THROWS_AS(multiset_permutations(4, {5, -1}), Error);
  try {
    multiset_permutations(3, {1, 1});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_composition);
  }
}

TEST_CASE("eligible-count distribution: worked four-node case") {
  // q = 4 packets over N = 4 nodes: 4/256, 84/256, 144/256, 24/256
  const auto exact = eligible_count_distribution_exact(4, 4);
  CHECK(exact[1] == frac(4, 256));
  CHECK(exact[2] == frac(84, 256));
  CHECK(exact[3] == frac(144, 256));
  CHECK(exact[4] == frac(24, 256));

  const auto d = eligible_count_distribution(4, 4);
  CHECK(d.prob(1) == doctest::Approx(0.015625).epsilon(1e-12));
  CHECK(d.prob(2) == doctest::Approx(0.328125).epsilon(1e-12));
  CHECK(d.prob(3) == doctest::Approx(0.5625).epsilon(1e-12));
  CHECK(d.prob(4) == doctest::Approx(0.09375).epsilon(1e-12));
}

TEST_CASE("eligible-count edge cases") {
  const auto one_packet = eligible_count_distribution(1, 7);
  CHECK(one_packet.max_xi() == 1);
  CHECK(one_packet.prob(1) == 1.0);

  const auto two_two = eligible_count_distribution_exact(2, 2);
  CHECK(two_two[1] == frac(1, 2));
  CHECK(two_two[2] == frac(1, 2));

  const auto single_node = eligible_count_distribution(64, 1);
  CHECK(single_node.max_xi() == 1);
  CHECK(single_node.prob(1) == 1.0);

  CHECK_THROWS_AS(eligible_count_distribution(0, 4), Error);
  try {
    eligible_count_distribution(kMaxExactOccupancy + 1, 4);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::combinatorics_bound);
  }
}

TEST_CASE("enumeration oracle small cases") {
  const auto d = enumerate_oracle_exact(2, 3);
  CHECK(d[1] == frac(3, 9));
  CHECK(d[2] == frac(6, 9));

  const auto single = enumerate_oracle(3, 1);
  CHECK(single.prob(1) == 1.0);

  try {
    enumerate_oracle(30, 10);
    FAIL("expected enumeration bound error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::enumeration_too_large);
  }
}

TEST_CASE("analytic distribution matches exhaustive enumeration exactly") {
  for (int n = 1; n <= 5; ++n) {
    for (int q = 1; q <= 8; ++q) {
      const auto analytic = eligible_count_distribution_exact(q, n);
      const auto oracle = enumerate_oracle_exact(q, n);
      REQUIRE(analytic.size() == oracle.size());
      for (std::size_t xi = 1; xi < analytic.size(); ++xi)
        CHECK(analytic[xi] == oracle[xi]);
    }
  }
}

TEST_CASE("eligible-count rows are proper distributions") {
  for (int n : {1, 2, 8, 16, 32}) {
    for (int q : {1, 2, 3, 5, 8, 13, 21, 64, 100}) {
      const auto exact = eligible_count_distribution_exact(q, n);
      mpq_class total(0);
      for (const auto& p : exact) total += p;
      CHECK(total == 1);  // exact rational normalization

      const auto d = eligible_count_distribution(q, n);
      const double sum = std::accumulate(d.probs.begin(), d.probs.end(), 0.0);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(d.max_xi() == std::min(q, n));  // no mass beyond min(q, N)
    }
  }
}

TEST_CASE("batch-size distribution") {
  SUBCASE("empty queue schedules exactly one packet") {
    const auto cfg = mpt_test::eval_config(4, 25, 4, 40.0);
    const auto dist = batch_size_distribution(cfg);
    CHECK(dist.p(1, 0) == 1.0);
    CHECK(dist.p(2, 0) == 0.0);
  }

  SUBCASE("four nodes, s_max = 4, q = 4: no folding") {
    mpt::SystemConfig c = mpt_test::eval_base();
    c.n_antennas = 4;
    c.n_nodes = 4;
    c.buffer_size = 8;
    c.s_max = 4;
    c.aggregate_rate = 1000.0;
    c.node_mean_snr_db = {30.0};
    const auto dist = batch_size_distribution(validate(c));
    CHECK(dist.p(1, 4) == doctest::Approx(0.015625).epsilon(1e-12));
    CHECK(dist.p(2, 4) == doctest::Approx(0.328125).epsilon(1e-12));
    CHECK(dist.p(3, 4) == doctest::Approx(0.5625).epsilon(1e-12));
    CHECK(dist.p(4, 4) == doctest::Approx(0.09375).epsilon(1e-12));
  }

  SUBCASE("four nodes, s_max = 2, q = 4: tail folds into m = 2") {
    mpt::SystemConfig c = mpt_test::eval_base();
    c.n_antennas = 4;
    c.n_nodes = 4;
    c.buffer_size = 8;
    c.s_max = 2;
    c.aggregate_rate = 1000.0;
    c.node_mean_snr_db = {30.0};
    const auto dist = batch_size_distribution(validate(c));
    CHECK(dist.p(1, 4) == doctest::Approx(0.015625).epsilon(1e-12));
    CHECK(dist.p(2, 4) == doctest::Approx(0.984375).epsilon(1e-12));
  }

  SUBCASE("single node always sends one packet") {
    const auto cfg = mpt_test::eval_config(1, 25, 1, 10.0);
    const auto dist = batch_size_distribution(cfg);
    for (int q = 0; q <= 25; ++q) {
      CHECK(dist.p(1, q) == 1.0);
      CHECK(dist.s_of(q) == 1);
    }
  }

  SUBCASE("rows sum to one and saturation mass grows with occupancy") {
    const auto cfg = mpt_test::eval_config(8, 30, 4, 60.0);
    const auto dist = batch_size_distribution(cfg);
    for (int q = 0; q <= 30; ++q) {
      double sum = 0.0;
      for (int m = 1; m <= dist.s_of(q); ++m) sum += dist.p(m, q);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    // N >= s_max: p(s_max | q) nondecreasing in q
    for (int q = 4; q < 30; ++q)
      CHECK(dist.p(4, q + 1) >= dist.p(4, q) - 1e-15);
  }

  SUBCASE("fewer nodes than s_max leaves long batches impossible") {
    const auto cfg = mpt_test::eval_config(2, 25, 6, 40.0);
    const auto dist = batch_size_distribution(cfg);
    for (int q = 3; q <= 25; ++q) {
      CHECK(dist.p(3, q) == 0.0);
      CHECK(dist.p(6, q) == 0.0);
      double sum = 0.0;
      for (int m = 1; m <= dist.s_of(q); ++m) sum += dist.p(m, q);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}
