#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "moebius/csr_cost.hpp"
#include "moebius/decision.hpp"
#include "oracles.hpp"

using namespace moebius;
using moebius::testing::close_rel;

namespace {

// Independent loops over 1-based indices; same summation order and
// accumulator width as the library so results compare bit for bit.
struct NaiveTerms {
  double neighborhood, sector, loyalty;
};

NaiveTerms naive_terms(const Eigen::MatrixXd& a, const CsrParams& p) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  const int half = rows / 2;
  const auto at = [&](int n, int m) { return a(n - 1, m - 1); };
  long double nb = 0.0L, sec = 0.0L, loy = 0.0L;
  for (int n = 1; n <= rows; ++n) {
    for (int m = 1; m <= cols; ++m) {
      const int next = n == rows ? 1 : n + 1;
      nb += static_cast<long double>(at(n, m)) * at(next, m);
    }
  }
  for (int n = 1; n <= rows; ++n) {
    for (int m = 1; m <= cols - 1; ++m) {
      sec += static_cast<long double>(at(n, m + 1)) * at(n, m);
    }
  }
  for (int n = 1; n <= rows; ++n) {
    const int partner = n + half > rows ? n + half - rows : n + half;
    loy += static_cast<long double>(at(n, cols)) * at(partner, cols);
  }
  return {static_cast<double>(p.t1 * (1.0 - p.delta) * nb), static_cast<double>(p.t2 * sec),
          static_cast<double>(p.t2 / 2.0 * loy)};
}

Eigen::MatrixXd random_contributions(std::mt19937_64& rng, int half, int sectors) {
  std::uniform_real_distribution<double> u(0.0, 0.999);
  Eigen::MatrixXd a(2 * half, sectors);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = u(rng);
  return a;
}

}  // namespace

TEST_SUITE("csr_cost") {
  TEST_CASE("neighbourhood term") {
    const CsrParams p{1.0, 1.0, 0.5};
    CHECK(neighborhood_term(ContributionMatrix::constant(3, 2, 0.0), p) == 0.0);

    Eigen::MatrixXd two(2, 1);
    two << 0.3, 0.7;
    CHECK(neighborhood_term(ContributionMatrix(two), p) == doctest::Approx(0.21).epsilon(1e-15));

    const double a = 0.4;
    CHECK(close_rel(neighborhood_term(ContributionMatrix::constant(3, 2, a), {2.0, 1.0, 0.25}),
                    2.0 * 0.75 * 2 * 3 * 2 * a * a, 1e-14));
  }

  TEST_CASE("sector term") {
    const CsrParams p{1.0, 2.0, 0.5};
    CHECK(sector_term(ContributionMatrix::constant(2, 1, 0.6), p) == 0.0);
    CHECK(close_rel(sector_term(ContributionMatrix::constant(2, 3, 0.6), p),
                    2.0 * 2 * 2 * (3 - 1) * 0.36, 1e-14));

    Eigen::MatrixXd single = Eigen::MatrixXd::Zero(4, 2);
    single(0, 0) = 0.2;
    single(0, 1) = 0.5;
    CHECK(sector_term(ContributionMatrix(single), p) == doctest::Approx(0.2).epsilon(1e-15));
  }

  TEST_CASE("loyalty term") {
    const CsrParams p{1.0, 1.0, 0.5};
    CHECK(loyalty_term(ContributionMatrix::constant(2, 2, 0.0), p) == 0.0);
    CHECK(close_rel(loyalty_term(ContributionMatrix::constant(3, 2, 0.3), {1.0, 1.5, 0.5}),
                    1.5 * 3 * 0.09, 1e-14));

    Eigen::MatrixXd col(4, 1);
    col << 0.1, 0.2, 0.3, 0.4;
    CHECK(loyalty_term(ContributionMatrix(col), p) == doctest::Approx(0.11).epsilon(1e-15));

    // Only the last sector takes part.
    Eigen::MatrixXd two = Eigen::MatrixXd::Zero(4, 2);
    two.col(0) << 0.9, 0.9, 0.9, 0.9;
    two.col(1) << 0.1, 0.2, 0.3, 0.4;
    CHECK(loyalty_term(ContributionMatrix(two), p) == doctest::Approx(0.11).epsilon(1e-15));
  }

  TEST_CASE("total with breakdown") {
    const CsrParams p{0.7, 1.3, 0.2};
    const auto spend = CostMatrix::constant(2, 3, 0.25);
    const CostBreakdown zero = total_hcsr(ContributionMatrix::constant(2, 3, 0.0), spend, p);
    CHECK(zero.total == -3.0);
    CHECK(zero.cost == -3.0);

    const double a = 0.35;
    const CostBreakdown b =
        total_hcsr(ContributionMatrix::constant(2, 3, a), CostMatrix::constant(2, 3, 0.0), p);
    const double expected = 0.7 * 0.8 * 2 * 2 * 3 * a * a + 1.3 * 2 * 2 * 2 * a * a + 1.3 * 2 * a * a;
    CHECK(close_rel(b.total, expected, 1e-13));
    CHECK(b.total == b.cost + b.neighborhood + b.sector + b.loyalty);
  }

  TEST_CASE("constant matrices reproduce the reduced firm objective with lambda = 2") {
    CsrScenario s{10, 2, 0.5, 2.0, 0.5, 0.1, 10.0, 8.0, 2};
    for (double c : {0.05, 0.267, 1.0, 1.9}) {
      const double t = s.k * std::pow(c * s.a, s.beta);
      const CostBreakdown b =
          total_hcsr(ContributionMatrix::constant(s.N, s.M, s.a),
                     CostMatrix::constant(s.N, s.M, c * s.a), {t, t, s.delta});
      CHECK(close_rel(b.total, hcsr_of_c(c, s), 1e-12));
    }
  }

  TEST_CASE("shape and range validation") {
    CHECK_THROWS_AS(ContributionMatrix(Eigen::MatrixXd::Zero(3, 2)), std::domain_error);
    CHECK_THROWS_AS(ContributionMatrix(Eigen::MatrixXd::Zero(0, 2)), std::domain_error);
    CHECK_THROWS_AS(ContributionMatrix(Eigen::MatrixXd::Zero(2, 0)), std::domain_error);
    CHECK_THROWS_AS(ContributionMatrix::constant(1, 1, 1.0), std::domain_error);
    CHECK_THROWS_AS(ContributionMatrix::constant(1, 1, -0.1), std::domain_error);
    CHECK_THROWS_AS(ContributionMatrix::constant(1, 1, NAN), std::domain_error);
    CHECK_THROWS_AS(CostMatrix::constant(1, 1, -1.0), std::domain_error);
    CHECK_THROWS_AS(total_hcsr(ContributionMatrix::constant(1, 2, 0.1), CostMatrix::constant(2, 2, 0.0),
                               {1.0, 1.0, 0.5}),
                    std::domain_error);
    const auto a = ContributionMatrix::constant(1, 1, 0.1);
    CHECK_THROWS_AS(neighborhood_term(a, {1.0, 1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(neighborhood_term(a, {1.0, 1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(sector_term(a, {1.0, -1.0, 0.5}), std::domain_error);
  }

  TEST_CASE("terms match naive loops bit for bit on random matrices") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int half = 1; half <= 5; ++half) {
      for (int sectors = 1; sectors <= 5; ++sectors) {
        const Eigen::MatrixXd raw = random_contributions(rng, half, sectors);
        const CsrParams p{u(rng), u(rng), 0.05 + 0.9 * u(rng) / 3.0};
        const ContributionMatrix a(raw);
        const NaiveTerms ref = naive_terms(raw, p);
        CHECK(neighborhood_term(a, p) == ref.neighborhood);
        CHECK(sector_term(a, p) == ref.sector);
        CHECK(loyalty_term(a, p) == ref.loyalty);
      }
    }
  }

  TEST_CASE("benefit terms are monotone in each contribution and linear in sensitivities") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const int half = 1 + trial % 4;
      const int sectors = 1 + trial % 3;
      Eigen::MatrixXd raw = random_contributions(rng, half, sectors) * 0.9;
      const CsrParams p{2.0 * u(rng), 2.0 * u(rng), 0.05 + 0.9 * u(rng)};
      const ContributionMatrix before(raw);
      const auto i = static_cast<Eigen::Index>(u(rng) * raw.rows());
      const auto j = static_cast<Eigen::Index>(u(rng) * raw.cols());
      raw(i, j) = std::min(0.999, raw(i, j) + 0.05);
      const ContributionMatrix after(raw);
      CHECK(neighborhood_term(after, p) >= neighborhood_term(before, p));
      CHECK(sector_term(after, p) >= sector_term(before, p));
      CHECK(loyalty_term(after, p) >= loyalty_term(before, p));

      const CsrParams doubled{2.0 * p.t1, 2.0 * p.t2, p.delta};
      CHECK(close_rel(neighborhood_term(after, doubled), 2.0 * neighborhood_term(after, p), 1e-15));
      CHECK(close_rel(sector_term(after, doubled), 2.0 * sector_term(after, p), 1e-15));
      CHECK(close_rel(loyalty_term(after, doubled), 2.0 * loyalty_term(after, p), 1e-15));

      const CsrParams decayed{p.t1, p.t2, 1.0 - (1.0 - p.delta) / 2.0};
      CHECK(close_rel(neighborhood_term(after, decayed), 0.5 * neighborhood_term(after, p), 1e-13));
    }
  }

  TEST_CASE("constant-matrix reduction at random parameters") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int draw = 0; draw < 20; ++draw) {
      const int half = 1 + static_cast<int>(u(rng) * 6);
      const int sectors = 1 + static_cast<int>(u(rng) * 6);
      const double a = 0.99 * u(rng);
      const CsrParams p{3.0 * u(rng), 3.0 * u(rng), 0.01 + 0.98 * u(rng)};
      const auto m = ContributionMatrix::constant(half, sectors, a);
      CHECK(close_rel(neighborhood_term(m, p), p.t1 * (1 - p.delta) * 2 * half * sectors * a * a, 1e-12));
      CHECK(close_rel(sector_term(m, p), p.t2 * 2 * half * (sectors - 1) * a * a, 1e-12));
      CHECK(close_rel(loyalty_term(m, p), p.t2 / 2.0 * 2 * half * a * a, 1e-12));
    }
  }
}
