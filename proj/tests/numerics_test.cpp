#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "lindsum/numerics.hpp"

namespace lindsum {
namespace {

// Erlang(m, rate) density written directly from its definition.
double erlang_pdf_oracle(int m, double rate, double x)
{
    return std::exp(m * std::log(rate) + (m - 1) * std::log(x) - rate * x - std::lgamma(m));
}

TEST(LnFactorial, SmallValues)
{
    EXPECT_EQ(ln_factorial(0), 0.0);
    EXPECT_EQ(ln_factorial(1), 0.0);
    // 20! by repeated multiplication.
    unsigned long long f = 1;
    for (unsigned long long i = 2; i <= 20; ++i)
        f *= i;
    EXPECT_EQ(f, 2432902008176640000ULL);
    EXPECT_NEAR(ln_factorial(20), std::log(2432902008176640000.0), 1e-14 * std::log(2.4e18));
}

TEST(LnFactorial, MatchesLgammaBeyondTable)
{
    for (long n : {21L, 50L, 299L, 1000L})
        EXPECT_NEAR(ln_factorial(n), std::lgamma(n + 1.0), 1e-14 * std::lgamma(n + 1.0));
    // Continuity across the table boundary: ln 21! = ln 20! + ln 21.
    EXPECT_NEAR(ln_factorial(21), ln_factorial(20) + std::log(21.0), 1e-13);
}

TEST(LnBinomial, PascalTriangle)
{
    // Pascal-triangle brute force up to row 30.
    std::vector<std::vector<double>> pascal(31);
    for (int n = 0; n <= 30; ++n) {
        pascal[n].assign(n + 1, 1.0);
        for (int r = 1; r < n; ++r)
            pascal[n][r] = pascal[n - 1][r - 1] + pascal[n - 1][r];
    }
    EXPECT_EQ(ln_binomial(5, 0), 0.0);
    EXPECT_NEAR(ln_binomial(5, 2), std::log(10.0), 1e-15);
    for (int n = 0; n <= 30; ++n)
        for (int r = 0; r <= n; ++r)
            EXPECT_NEAR(ln_binomial(n, r), std::log(pascal[n][r]), 1e-12);
}

TEST(LnBinomial, RejectsOutOfRange)
{
    EXPECT_THROW(ln_binomial(3, 4), std::domain_error);
    EXPECT_THROW(ln_binomial(3, -1), std::domain_error);
}

TEST(ErlangTail, Examples)
{
    EXPECT_EQ(erlang_tail(1, 2.0, 0.0), 1.0);
    EXPECT_NEAR(erlang_tail(1, 2.0, 1.0), std::exp(-2.0), 1e-16);
    EXPECT_NEAR(erlang_tail(3, 1.0, 2.0), std::exp(-2.0) * (1.0 + 2.0 + 2.0), 1e-15);
}

TEST(ErlangTail, ExtremeArgumentsStayInRange)
{
    // e^{-x} alone underflows here, but the tail is still a tiny positive number.
    const double far = erlang_tail(300, 1.0, 900.0);
    EXPECT_GT(far, 0.0);
    EXPECT_LT(far, 1e-100);
    EXPECT_EQ(erlang_tail(300, 1.0, 1e-3), 1.0);
    const double mid = erlang_tail(300, 1.0, 300.0);
    EXPECT_NEAR(mid, 0.5, 0.05);
    EXPECT_THROW(erlang_tail(0, 1.0, 1.0), std::domain_error);
    EXPECT_THROW(erlang_tail(1, 0.0, 1.0), std::domain_error);
}

TEST(ErlangTail, MonotoneOnRandomGrids)
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> rate_dist(0.05, 5.0);
    std::uniform_real_distribution<double> t_dist(0.0, 60.0);
    std::uniform_int_distribution<int> shape_dist(1, 60);
    for (int trial = 0; trial < 2000; ++trial) {
        const double rate = rate_dist(gen);
        const double t1 = t_dist(gen);
        const double t2 = t1 + t_dist(gen);
        const int m = shape_dist(gen);
        EXPECT_GE(erlang_tail(m, rate, t1), erlang_tail(m, rate, t2)) << m << " " << rate;
        EXPECT_LE(erlang_tail(m, rate, t1), erlang_tail(m + 1, rate, t1)) << m << " " << rate;
    }
}

TEST(ErlangTail, AgreesWithQuadratureOfDensity)
{
    for (int m = 1; m <= 30; ++m) {
        for (double t : {0.5, 3.0, 12.0, 40.0}) {
            const double rate = 0.8;
            const auto mass =
                integrate([&](double x) { return erlang_pdf_oracle(m, rate, x); }, 0.0, t, 1e-13);
            EXPECT_NEAR(erlang_tail(m, rate, t), 1.0 - mass.value, 1e-10) << "m=" << m << " t=" << t;
        }
    }
}

TEST(SumLogTerms, Examples)
{
    const LogWeightedTerm one[] = {{std::log(1.0)}};
    EXPECT_EQ(sum_log_terms(one), 1.0);
    const LogWeightedTerm two[] = {{std::log(2.0)}, {std::log(3.0)}};
    EXPECT_NEAR(sum_log_terms(two), 5.0, 1e-15);
    const LogWeightedTerm big[] = {{1000.0}, {1000.0}};
    EXPECT_NEAR(log_sum_terms(big), 1000.0 + std::log(2.0), 1e-12);
    EXPECT_THROW(sum_log_terms(std::span<const LogWeightedTerm>{}), std::domain_error);
}

TEST(SumLogTerms, AgreesWithNaiveSum)
{
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> mag(-700.0, 700.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<LogWeightedTerm> terms;
        double naive = 0.0;
        const int count = 1 + trial % 17;
        // Keep magnitudes within a narrow band so the naive sum cannot overflow.
        const double base = mag(gen) * 0.9;
        for (int i = 0; i < count; ++i) {
            const double lm = base + std::uniform_real_distribution<double>(-20.0, 20.0)(gen);
            terms.push_back({lm});
            naive += std::exp(lm);
        }
        EXPECT_NEAR(sum_log_terms(terms), naive, 1e-12 * naive);
    }
}

TEST(CompensatedSum, RecoversLostLowOrderBits)
{
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i)
        s.add(1e-17);
    s.add(-1.0);
    EXPECT_NEAR(s.value(), 1e-14, 1e-26);
}

TEST(Integrate, UnitMasses)
{
    const auto expo = integrate([](double x) { return std::exp(-x); }, 0.0, kInfinity, 1e-10);
    EXPECT_NEAR(expo.value, 1.0, 1e-10);
    EXPECT_LE(expo.error_estimate, 1e-10);
    EXPECT_GT(expo.evaluations, 0u);
    const auto gamma2 = integrate([](double x) { return x * std::exp(-x); }, 0.0, kInfinity, 1e-10);
    EXPECT_NEAR(gamma2.value, 1.0, 1e-10);
}

TEST(Integrate, GammaIntegrals)
{
    for (double theta : {0.3, 1.0, 2.5}) {
        for (int k = 0; k <= 10; ++k) {
            const auto r = integrate(
                [&](double x) { return std::pow(x, k) * std::exp(-theta * x); }, 0.0, kInfinity,
                QuadratureOptions{1e-10, 1e-12, 2000});
            const double exact = std::exp(std::lgamma(k + 1.0) - (k + 1) * std::log(theta));
            EXPECT_NEAR(r.value, exact, std::max(1e-10, 1e-11 * exact)) << k << " " << theta;
        }
    }
}

TEST(Integrate, FiniteAndReversedIntervals)
{
    const auto r = integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
    EXPECT_NEAR(r.value, 2.0, 1e-12);
    const auto rev = integrate([](double x) { return std::sin(x); }, M_PI, 0.0);
    EXPECT_NEAR(rev.value, -2.0, 1e-12);
    EXPECT_EQ(integrate([](double) { return 1.0; }, 2.0, 2.0).value, 0.0);
}

TEST(Integrate, SignalsNonConvergenceWithBestEstimate)
{
    // Unreachable tolerance: below the round-off floor of the rule.
    try {
        integrate([](double x) { return std::exp(-x); }, 0.0, kInfinity,
                  QuadratureOptions{1e-18, 0.0, 50});
        FAIL() << "expected QuadratureError";
    } catch (const QuadratureError& e) {
        EXPECT_NEAR(e.best().value, 1.0, 1e-12);
        EXPECT_GT(e.best().error_estimate, 1e-18);
    }
    EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, 1.0, QuadratureOptions{0.0, 0.0, 10}),
                 std::domain_error);
}

} // namespace
} // namespace lindsum
