#include <cmath>
#include <functional>
#include <vector>

#include <gtest/gtest.h>

#include "lindsum/numerics.hpp"
#include "lindsum/sums.hpp"

namespace lindsum {
namespace {

std::vector<Member> all_members()
{
    std::vector<Member> out;
    for (const auto& t : kMembers)
        out.push_back(t.member);
    return out;
}

double binom(int n, int r)
{
    return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0)));
}

// m-th moment rows of the published moment table, transcribed per member.
double transcribed_moment(Member member, double t, int n, int m)
{
    double prefactor = 0.0;
    double ratio = 0.0;
    int k = 0;
    switch (member) {
    case Member::Shanker:
        prefactor = t * t / (t * t + 1), ratio = 1 / (t * t), k = 1;
        break;
    case Member::Akash:
        prefactor = t * t / (t * t + 2), ratio = 2 / (t * t), k = 2;
        break;
    case Member::Ishita:
        prefactor = std::pow(t, 3) / (std::pow(t, 3) + 2), ratio = 2 / std::pow(t, 3), k = 2;
        break;
    case Member::Pranav:
        prefactor = std::pow(t, 4) / (std::pow(t, 4) + 6), ratio = 6 / std::pow(t, 4), k = 3;
        break;
    case Member::Rani:
        prefactor = std::pow(t, 5) / (std::pow(t, 5) + 24), ratio = 24 / std::pow(t, 5), k = 4;
        break;
    case Member::RamAwadh:
        prefactor = std::pow(t, 6) / (std::pow(t, 6) + 120), ratio = 120 / std::pow(t, 6), k = 5;
        break;
    case Member::Lindley:
        ADD_FAILURE() << "no transcribed row";
        return 0.0;
    }
    double sum = 0.0;
    for (int r = 0; r <= n; ++r)
        sum += binom(n, r) * binom(n + m + k * r - 1, n + k * r - 1) * std::pow(ratio, r);
    return std::tgamma(m + 1.0) / std::pow(t, m) * std::pow(prefactor, n) * sum;
}

TEST(SumSpec, RejectsEmptySum)
{
    EXPECT_THROW(SumSpec(Distribution(Member::Lindley, 1.0), 0), std::domain_error);
}

TEST(SumPdf, SingleTermReducesToBaseDensity)
{
    for (Member m : all_members())
        for (double theta : {0.1, 0.5, 1.0, 2.0, 5.0}) {
            const Distribution d(m, theta);
            const SumSpec spec(d, 1);
            for (double x : {0.0, 0.001, 0.4, 1.0, 3.0, 12.0, 60.0})
                EXPECT_NEAR(sum_pdf(spec, x), d.pdf(x), 1e-12 * d.pdf(x))
                    << member_name(m) << " theta=" << theta << " x=" << x;
        }
}

TEST(SumPdf, ZeroOutsideSupport)
{
    const SumSpec two(Distribution(Member::Pranav, 1.0), 2);
    EXPECT_EQ(sum_pdf(two, 0.0), 0.0);
    EXPECT_EQ(sum_pdf(two, -1.0), 0.0);
    const SumSpec one(Distribution(Member::Pranav, 1.0), 1);
    EXPECT_GT(sum_pdf(one, 0.0), 0.0);
    EXPECT_EQ(sum_pdf(one, -1e-9), 0.0);
}

TEST(SumPdf, PublishedExamples)
{
    const SumSpec shanker(Distribution(Member::Shanker, 1.0), 2);
    EXPECT_NEAR(sum_pdf(shanker, 1.0), 0.25 * std::exp(-1.0) * (1.0 + 1.0 + 1.0 / 6.0), 1e-15);

    const SumSpec ram(Distribution(Member::RamAwadh, 1.0), 3);
    const double x = 2.0;
    const double f2 = std::pow(x, 2) / 2 + std::pow(x, 7) / 14 + std::pow(x, 12) / 11088 +
                      std::pow(x, 17) / 205837632;
    const double expected = std::pow(1.0 / 121.0, 3) * std::exp(-x) * f2;
    EXPECT_NEAR(sum_pdf(ram, x), expected, 1e-13 * expected);
}

// Bracket polynomials of the worked n = 2, 3 convolutions, written in the
// published closed form; sum_pdf / (c^n e^{-theta x}) must reproduce them.
struct Bracket
{
    Member member;
    int n;
    std::function<double(double, double)> poly; // (theta, x)
    bool theta_free_only;                       // published form valid at theta = 1 only
};

TEST(SumPdf, ReproducesWorkedPolynomials)
{
    using std::pow;
    const std::vector<Bracket> brackets = {
        {Member::Lindley, 2, [](double, double x) { return x + x * x + pow(x, 3) / 6; }, false},
        {Member::Lindley, 3,
         [](double, double x) { return x * x / 2 + pow(x, 3) / 2 + pow(x, 4) / 8 + pow(x, 5) / 120; },
         false},
        {Member::Shanker, 2,
         [](double t, double x) { return t * t * x + t * x * x + pow(x, 3) / 6; }, false},
        {Member::Shanker, 3,
         [](double t, double x) {
             return pow(t, 3) * x * x / 2 + t * t * pow(x, 3) / 2 + t * pow(x, 4) / 8 +
                    pow(x, 5) / 120;
         },
         false},
        {Member::Akash, 2, [](double, double x) { return x + 2 * pow(x, 3) / 3 + pow(x, 5) / 30; },
         false},
        {Member::Akash, 3,
         [](double, double x) {
             return x * x / 2 + pow(x, 4) / 4 + pow(x, 6) / 60 + pow(x, 8) / 5040;
         },
         false},
        {Member::Ishita, 2, [](double, double x) { return x + 2 * pow(x, 3) / 3 + pow(x, 5) / 30; },
         true},
        {Member::Ishita, 3,
         [](double, double x) {
             return x * x / 2 + pow(x, 4) / 4 + pow(x, 6) / 60 + pow(x, 8) / 5040;
         },
         true},
        {Member::Pranav, 2,
         [](double t, double x) { return t * t * x + t * pow(x, 4) / 2 + pow(x, 7) / 140; }, false},
        {Member::Pranav, 3,
         [](double t, double x) {
             return pow(t, 3) * x * x / 2 + 3 * t * t * pow(x, 5) / 20 + 3 * t * pow(x, 8) / 1120 +
                    pow(x, 11) / 184800;
         },
         false},
        {Member::Rani, 2,
         [](double t, double x) { return t * t * x + 2 * t * pow(x, 5) / 5 + pow(x, 9) / 630; },
         false},
        {Member::Rani, 3,
         [](double t, double x) {
             return pow(t, 3) * x * x / 2 + t * t * pow(x, 6) / 10 + t * pow(x, 10) / 2100 +
                    pow(x, 14) / 6306300;
         },
         false},
        {Member::RamAwadh, 2,
         [](double t, double x) { return t * t * x + t * pow(x, 6) / 3 + pow(x, 11) / 2772; },
         false},
        {Member::RamAwadh, 3,
         [](double t, double x) {
             return pow(t, 3) * x * x / 2 + t * t * pow(x, 7) / 14 + t * pow(x, 12) / 11088 +
                    pow(x, 17) / 205837632;
         },
         false},
    };

    for (const auto& b : brackets) {
        for (double theta : {1.0, 2.0, 0.5}) {
            if (b.theta_free_only && theta != 1.0)
                continue;
            const SumSpec spec(Distribution(b.member, theta), b.n);
            const double c = spec.dist.norm_const();
            for (double x : {0.3, 1.0, 2.0, 4.5, 9.0}) {
                const double bracket = sum_pdf(spec, x) / (std::pow(c, b.n) * std::exp(-theta * x));
                const double expected = b.poly(theta, x);
                EXPECT_NEAR(bracket, expected, 1e-12 * expected)
                    << member_name(b.member) << " n=" << b.n << " theta=" << theta << " x=" << x;
            }
        }
    }
}

TEST(ErlangMixture, SmallCases)
{
    const ErlangMixture lindley(SumSpec(Distribution(Member::Lindley, 1.0), 1));
    ASSERT_EQ(lindley.components().size(), 2u);
    EXPECT_NEAR(lindley.components()[0].weight, 0.5, 1e-15);
    EXPECT_NEAR(lindley.components()[1].weight, 0.5, 1e-15);
    EXPECT_EQ(lindley.components()[0].shape, 1);
    EXPECT_EQ(lindley.components()[1].shape, 2);

    const ErlangMixture shanker(SumSpec(Distribution(Member::Shanker, 1.0), 2));
    const double weights[] = {0.25, 0.5, 0.25};
    const long shapes[] = {2, 3, 4};
    ASSERT_EQ(shanker.components().size(), 3u);
    for (std::size_t r = 0; r < 3; ++r) {
        EXPECT_NEAR(shanker.components()[r].weight, weights[r], 1e-15);
        EXPECT_EQ(shanker.components()[r].shape, shapes[r]);
    }
}

TEST(ErlangMixture, WeightsNormalizedAndShapesIncreasing)
{
    for (Member m : all_members())
        for (double theta : {0.1, 1.0, 7.0})
            for (int n = 1; n <= 20; ++n) {
                const ErlangMixture mix(SumSpec(Distribution(m, theta), n));
                CompensatedSum total;
                for (std::size_t r = 0; r < mix.components().size(); ++r) {
                    const auto& c = mix.components()[r];
                    total.add(c.weight);
                    EXPECT_GT(c.weight, 0.0);
                    EXPECT_EQ(c.shape, n + static_cast<long>(traits(m).degree) * r);
                }
                EXPECT_NEAR(total.value(), 1.0, 1e-10);
                EXPECT_NEAR(mix.raw_log_total(), 0.0, 1e-10);
            }
}

TEST(ErlangMixture, DensityMatchesSeries)
{
    for (Member m : all_members())
        for (double theta : {0.5, 1.0, 2.0})
            for (int n : {1, 2, 3, 7, 15}) {
                const SumSpec spec(Distribution(m, theta), n);
                const ErlangMixture mix(spec);
                for (int i = -20; i <= 25; ++i) {
                    const double x = std::pow(10.0, i / 10.0);
                    const double series = sum_pdf(spec, x);
                    EXPECT_NEAR(mix.pdf(x), series, 1e-10 * series);
                }
            }
}

TEST(SumSurvival, Examples)
{
    const SumSpec spec(Distribution(Member::Lindley, 1.0), 5);
    EXPECT_EQ(sum_survival(spec, 0.0), 1.0);
    EXPECT_EQ(sum_survival(spec, -3.0), 1.0);
    const auto head = integrate([&](double x) { return sum_pdf(spec, x); }, 0.0, 7.5, 1e-12);
    EXPECT_NEAR(sum_survival(spec, 7.5), 1.0 - head.value, 1e-8);

    const SumSpec akash(Distribution(Member::Akash, 2.0), 3);
    EXPECT_EQ(sum_cdf(akash, -1.0), 0.0);
    EXPECT_EQ(sum_cdf(akash, 0.0), 0.0);
    const auto mass = integrate([&](double x) { return sum_pdf(akash, x); }, 0.0, 4.0, 1e-12);
    EXPECT_NEAR(sum_cdf(akash, 4.0), mass.value, 1e-8);
}

TEST(SumSurvival, MonotoneAndBounded)
{
    for (Member m : all_members()) {
        const SumSpec spec(Distribution(m, 0.7), 6);
        double previous = 1.0;
        for (int i = 0; i <= 500; ++i) {
            const double s = sum_survival(spec, 0.25 * i);
            EXPECT_LE(s, previous);
            EXPECT_GE(s, 0.0);
            previous = s;
        }
    }
}

TEST(SumMoment, Examples)
{
    const SumSpec lindley(Distribution(Member::Lindley, 1.0), 5);
    EXPECT_EQ(sum_moment(lindley, 0), 1.0);
    EXPECT_NEAR(sum_moment(lindley, 1), 7.5, 1e-14);
    for (Member m : all_members())
        for (int n : {1, 2, 5, 9}) {
            const Distribution d(m, 1.7);
            EXPECT_NEAR(sum_moment(SumSpec(d, n), 1), n * d.moment(1), 1e-13 * n * d.moment(1));
        }
}

TEST(SumMoment, MatchesTranscribedMomentTable)
{
    for (Member m : all_members()) {
        if (m == Member::Lindley)
            continue;
        for (double theta : {0.5, 1.0, 2.0})
            for (int n = 1; n <= 5; ++n)
                for (int order = 1; order <= 3; ++order) {
                    const double expected = transcribed_moment(m, theta, n, order);
                    EXPECT_NEAR(sum_moment(SumSpec(Distribution(m, theta), n), order), expected,
                                1e-10 * expected)
                        << member_name(m) << " theta=" << theta << " n=" << n << " m=" << order;
                }
    }
}

TEST(SumMoment, MatchesQuadrature)
{
    for (Member m : all_members())
        for (double theta : {0.5, 2.0})
            for (int n = 1; n <= 5; n += 2)
                for (int order = 1; order <= 4; ++order) {
                    const SumSpec spec(Distribution(m, theta), n);
                    const auto q =
                        integrate([&](double x) { return std::pow(x, order) * sum_pdf(spec, x); },
                                  0.0, kInfinity, QuadratureOptions{1e-12, 1e-11, 2000});
                    EXPECT_NEAR(sum_moment(spec, order), q.value, 1e-6 * q.value);
                }
}

TEST(SumMoment, MeanAndVariance)
{
    for (Member m : all_members()) {
        const Distribution d(m, 1.3);
        const SumSpec one(d, 1);
        const double var1 = d.moment(2) - d.moment(1) * d.moment(1);
        EXPECT_NEAR(sum_mean(one), d.moment(1), 1e-14 * d.moment(1));
        EXPECT_NEAR(sum_variance(one), var1, 1e-12 * var1);
        const SumSpec four(d, 4);
        EXPECT_NEAR(sum_variance(four), 4 * sum_variance(one), 1e-10 * 4 * var1);
        const double raw = sum_moment(four, 2) - sum_mean(four) * sum_mean(four);
        EXPECT_NEAR(sum_variance(four), raw, 1e-10 * raw);
    }
    EXPECT_NEAR(sum_mean(SumSpec(Distribution(Member::Shanker, 1.0), 2)), 3.0, 1e-14);
}

TEST(SumMoment, SummaryOfLargeSumApproachesNormalShape)
{
    const MomentSummary s = moment_summary(SumSpec(Distribution(Member::Lindley, 1.0), 200));
    EXPECT_NEAR(s.mean, 300.0, 1e-9);
    EXPECT_NEAR(s.variance, 350.0, 1e-8);
    EXPECT_LT(std::abs(s.skewness), 0.2);
    EXPECT_NEAR(s.kurtosis, 3.0, 0.1);
}

TEST(SumPdf, NormalizedByQuadrature)
{
    for (Member m : all_members())
        for (double theta : {0.5, 2.0})
            for (int n : {2, 5, 10}) {
                const SumSpec spec(Distribution(m, theta), n);
                const auto r =
                    integrate([&](double x) { return sum_pdf(spec, x); }, 0.0, kInfinity, 1e-10);
                EXPECT_NEAR(r.value, 1.0, 1e-8) << member_name(m) << " theta=" << theta << " n=" << n;
            }
}

TEST(SumPdf, LargeSumStaysFinite)
{
    const SumSpec spec(Distribution(Member::RamAwadh, 1.0), 50);
    for (int i = 1; i <= 5000; ++i) {
        const double v = sum_pdf(spec, 0.1 * i);
        ASSERT_TRUE(std::isfinite(v)) << 0.1 * i;
        ASSERT_GE(v, 0.0);
    }
    const double split = sum_mean(spec);
    const auto head = integrate([&](double x) { return sum_pdf(spec, x); }, 0.0, split, 1e-10);
    const auto tail = integrate([&](double x) { return sum_pdf(spec, x); }, split, kInfinity, 1e-10);
    EXPECT_NEAR(head.value + tail.value, 1.0, 1e-6);
    EXPECT_TRUE(std::isfinite(sum_survival(spec, 250.0)));
}

} // namespace
} // namespace lindsum
