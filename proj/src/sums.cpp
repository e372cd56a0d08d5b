#include "lindsum/sums.hpp"

#include <cmath>
#include <stdexcept>

#include "lindsum/numerics.hpp"

namespace lindsum {

SumSpec::SumSpec(Distribution d, int count) : dist(d), n(count)
{
    if (count < 1)
        throw std::domain_error("SumSpec: n must be >= 1");
}

namespace {

// ln of the r-th coefficient c^n C(n,r) alpha^{n-r} (k!)^r, without the
// power of x and the factorial denominator.
double log_series_coefficient(const SumSpec& spec, int r)
{
    const Distribution& d = spec.dist;
    const int n = spec.n;
    return n * std::log(d.norm_const()) + ln_binomial(n, r) + (n - r) * std::log(d.alpha()) +
           r * ln_factorial(d.degree());
}

} // namespace

double log_sum_pdf(const SumSpec& spec, double x)
{
    const int n = spec.n;
    const int k = spec.dist.degree();
    if (x < 0.0 || std::isinf(x))
        return -kInfinity;
    if (x == 0.0) {
        // Only the r = 0 term of an n = 1 sum has x^0.
        return n == 1 ? log_series_coefficient(spec, 0) : -kInfinity;
    }

    const double log_x = std::log(x);
    std::vector<LogWeightedTerm> terms;
    terms.reserve(static_cast<std::size_t>(n) + 1);
    for (int r = 0; r <= n; ++r) {
        const long power = n + static_cast<long>(k) * r - 1;
        terms.push_back({log_series_coefficient(spec, r) + power * log_x - ln_factorial(power)});
    }
    return log_sum_terms(terms) - spec.dist.theta() * x;
}

double sum_pdf(const SumSpec& spec, double x)
{
    return std::exp(log_sum_pdf(spec, x));
}

ErlangMixture::ErlangMixture(const SumSpec& spec) : rate_(spec.dist.theta())
{
    const int n = spec.n;
    const int k = spec.dist.degree();
    const double log_theta = std::log(rate_);

    std::vector<LogWeightedTerm> log_weights;
    components_.reserve(static_cast<std::size_t>(n) + 1);
    for (int r = 0; r <= n; ++r) {
        const long shape = n + static_cast<long>(k) * r;
        const double lw = log_series_coefficient(spec, r) - shape * log_theta;
        components_.push_back({0.0, lw, shape});
        log_weights.push_back({lw});
    }
    // Analytically the raw weights already sum to one; normalizing removes
    // accumulated rounding.
    raw_log_total_ = log_sum_terms(log_weights);
    for (auto& c : components_) {
        c.log_weight -= raw_log_total_;
        c.weight = std::exp(c.log_weight);
    }
}

double ErlangMixture::pdf(double x) const
{
    if (x < 0.0 || std::isinf(x))
        return 0.0;
    if (x == 0.0)
        return components_.front().shape == 1 ? components_.front().weight * rate_ : 0.0;
    const double log_x = std::log(x);
    const double log_rate = std::log(rate_);
    std::vector<LogWeightedTerm> terms;
    terms.reserve(components_.size());
    for (const auto& c : components_)
        terms.push_back(
            {c.log_weight + c.shape * log_rate + (c.shape - 1) * log_x - ln_factorial(c.shape - 1)});
    return std::exp(log_sum_terms(terms) - rate_ * x);
}

double ErlangMixture::survival(double t) const
{
    if (t <= 0.0)
        return 1.0;
    CompensatedSum sum;
    for (const auto& c : components_)
        sum.add(c.weight * erlang_tail(c.shape, rate_, t));
    return clamp_probability(sum.value());
}

double ErlangMixture::moment(int m) const
{
    if (m < 0)
        throw std::domain_error("moment: order must be >= 0");
    if (m == 0)
        return 1.0;
    const double log_rate = std::log(rate_);
    std::vector<LogWeightedTerm> terms;
    terms.reserve(components_.size());
    for (const auto& c : components_)
        terms.push_back({c.log_weight + ln_factorial(c.shape + m - 1) - ln_factorial(c.shape - 1) -
                         m * log_rate});
    return sum_log_terms(terms);
}

double sum_survival(const SumSpec& spec, double t)
{
    if (t <= 0.0)
        return 1.0;
    return ErlangMixture(spec).survival(t);
}

double sum_cdf(const SumSpec& spec, double t)
{
    return 1.0 - sum_survival(spec, t);
}

double sum_moment(const SumSpec& spec, int m)
{
    return ErlangMixture(spec).moment(m);
}

double sum_mean(const SumSpec& spec)
{
    return sum_moment(spec, 1);
}

double sum_variance(const SumSpec& spec)
{
    // Law of total variance over the mixture components: avoids the
    // cancellation in E[S^2] - E[S]^2.
    const ErlangMixture mixture(spec);
    CompensatedSum mean_shape;
    for (const auto& c : mixture.components())
        mean_shape.add(c.weight * static_cast<double>(c.shape));
    const double mbar = mean_shape.value();
    CompensatedSum spread;
    for (const auto& c : mixture.components()) {
        const double d = static_cast<double>(c.shape) - mbar;
        spread.add(c.weight * d * d);
    }
    const double theta = mixture.rate();
    return (mbar + spread.value()) / (theta * theta);
}

MomentSummary moment_summary(const SumSpec& spec)
{
    const ErlangMixture mixture(spec);
    const double m1 = mixture.moment(1);
    const double m2 = mixture.moment(2);
    const double m3 = mixture.moment(3);
    const double m4 = mixture.moment(4);
    const double variance = sum_variance(spec);
    const double mu3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
    const double mu4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
    return {m1, variance, mu3 / std::pow(variance, 1.5), mu4 / (variance * variance)};
}

} // namespace lindsum
