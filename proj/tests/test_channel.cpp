#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "aoiharq/channel.hpp"

using namespace aoiharq;

namespace {

// Exact rational binomial CDF. The double -> mpq_class conversion is exact,
// so the only rounding is the final get_d().
double exact_binomial_cdf(int k, int n, double p) {
    const mpq_class pq(p);
    const mpq_class qq = 1 - pq;
    mpq_class sum = 0;
    for (int l = 0; l <= k; ++l) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), n, l);
        mpq_class term(binom);
        for (int i = 0; i < l; ++i) term *= pq;
        for (int i = 0; i < n - l; ++i) term *= qq;
        sum += term;
    }
    return sum.get_d();
}

}  // namespace

TEST_CASE("binomial_cdf single-term and full-support cases") {
    CHECK(binomial_cdf(0, 20, 0.1) == doctest::Approx(std::pow(0.9, 20)).epsilon(1e-14));
    CHECK(binomial_cdf(20, 20, 0.1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(binomial_cdf(0, 0, 0.3) == doctest::Approx(1.0));
}

TEST_CASE("binomial_cdf matches the exact rational oracle") {
    // frozen from the exact oracle: P(Bin(20, 0.1) <= 2)
    CHECK(binomial_cdf(2, 20, 0.1) == doctest::Approx(0.676926805189466).epsilon(1e-12));

    std::mt19937 gen(42);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = int(gen() % 100) + 1;
        const int k = int(gen() % (n + 1));
        const double p = unif(gen);
        const double got = binomial_cdf(k, n, p);
        const double want = exact_binomial_cdf(k, n, p);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("binomial_cdf is non-decreasing in k and finite at large n_trials") {
    double prev = 0.0;
    for (int k = 0; k <= 60; ++k) {
        const double c = binomial_cdf(k, 60, 0.37);
        CHECK(c >= prev);
        prev = c;
    }
    const double big = binomial_cdf(5000, 10000, 0.5);
    CHECK(std::isfinite(big));
    CHECK(big == doctest::Approx(0.5).epsilon(0.02));  // median of Bin(10^4, 1/2)
}

TEST_CASE("binomial_cdf rejects bad arguments") {
    CHECK_THROWS_AS(binomial_cdf(5, 4, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(binomial_cdf(-1, 4, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(binomial_cdf(2, 4, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(binomial_cdf(2, 4, 1.5), std::invalid_argument);
}

TEST_CASE("bsc_mds_probs worked values") {
    const HarqScheme scheme{15, 20, 1};
    const AttemptProbs probs = bsc_mds_probs(scheme, BscParams{0.1});
    // frozen from the exact oracle: t1 = 2 over 20 trials, t2 = 3 over 21
    CHECK(probs.q1 == doctest::Approx(0.676926805189466).epsilon(1e-12));
    CHECK(probs.q2 == doctest::Approx(0.848034689428045).epsilon(1e-12));
}

TEST_CASE("bsc_mds_probs with m=0 gives q1 == q2") {
    const AttemptProbs a = bsc_mds_probs(HarqScheme{15, 15, 0}, BscParams{0.1});
    CHECK(a.q1 == doctest::Approx(std::pow(0.9, 15)).epsilon(1e-14));
    CHECK(a.q1 == a.q2);

    const AttemptProbs b = bsc_mds_probs(HarqScheme{10, 25, 0}, BscParams{0.3});
    CHECK(b.q1 == b.q2);
}

TEST_CASE("q2 grows with every gained unit of correctable radius") {
    // q2 is not monotone in m itself: the radius t2 = (n+m-l)/2 only grows on
    // every other bit, and on the off step the extra trial lowers the CDF.
    // Monotonicity holds exactly on the steps where t2 increases, and over
    // m -> m+2 (one extra correctable error per two extra bits).
    for (double eps : {0.05, 0.1, 0.4}) {
        std::vector<double> q2s;
        for (int m = 0; m <= 200; ++m) {
            const AttemptProbs p = bsc_mds_probs(HarqScheme{15, 20, m}, BscParams{eps});
            q2s.push_back(p.q2);
        }
        for (int m = 0; m + 1 <= 200; ++m) {
            const int t_now = (20 + m - 15) / 2;
            const int t_next = (20 + m + 1 - 15) / 2;
            if (t_next > t_now) CHECK(q2s[m + 1] >= q2s[m] - 1e-14);
        }
        for (int m = 0; m + 2 <= 200; ++m) CHECK(q2s[m + 2] >= q2s[m] - 1e-14);
    }
}

TEST_CASE("paper-literal convention drops the zero-error term") {
    const HarqScheme scheme{15, 20, 1};
    const AttemptProbs with = bsc_mds_probs(scheme, BscParams{0.1}, true);
    const AttemptProbs without = bsc_mds_probs(scheme, BscParams{0.1}, false);
    CHECK(with.q1 - without.q1 == doctest::Approx(std::pow(0.9, 20)).epsilon(1e-12));

    // n = l leaves no correctable radius; dropping the zero-error term makes
    // the scheme infeasible
    CHECK_THROWS_AS(bsc_mds_probs(HarqScheme{15, 15, 0}, BscParams{0.1}, false),
                    std::domain_error);
}

TEST_CASE("scheme and channel validation") {
    CHECK_THROWS_AS((HarqScheme{0, 5, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((HarqScheme{5, 4, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((HarqScheme{5, 5, -1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((BscParams{0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((BscParams{0.5}.validate()), std::invalid_argument);
    CHECK_NOTHROW(BscParams{0.25}.validate());
}

TEST_CASE("explicit_probs validates its range") {
    const AttemptProbs perfect = explicit_probs(1.0, 1.0);
    CHECK(perfect.q1 == 1.0);
    CHECK(perfect.q2 == 1.0);
    const AttemptProbs mid = explicit_probs(0.5, 0.7);
    CHECK(mid.q1 == 0.5);
    CHECK(mid.q2 == 0.7);
    CHECK_THROWS_AS(explicit_probs(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(explicit_probs(0.5, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(explicit_probs(-0.1, 0.5), std::invalid_argument);
}
