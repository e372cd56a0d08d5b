#include "lindsum/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace lindsum {

void CompensatedSum::add(double x) noexcept
{
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        compensation_ += (sum_ - t) + x;
    else
        compensation_ += (x - t) + sum_;
    sum_ = t;
}

namespace {

// ln(n!) for n <= 20, built from the exact 64-bit factorials.
const std::array<double, 21>& ln_factorial_table()
{
    static const std::array<double, 21> table = [] {
        std::array<double, 21> t{};
        unsigned long long f = 1;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i > 0)
                f *= i;
            t[i] = std::log(static_cast<double>(f));
        }
        return t;
    }();
    return table;
}

} // namespace

double ln_factorial(long n)
{
    if (n < 0)
        throw std::domain_error("ln_factorial: negative argument");
    if (n <= 20)
        return ln_factorial_table()[static_cast<std::size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double ln_binomial(long n, long r)
{
    if (n < 0 || r < 0 || r > n)
        throw std::domain_error("ln_binomial: require 0 <= r <= n, got n=" + std::to_string(n) +
                                ", r=" + std::to_string(r));
    return ln_factorial(n) - ln_factorial(r) - ln_factorial(n - r);
}

double erlang_tail(long shape, double rate, double t)
{
    if (shape < 1)
        throw std::domain_error("erlang_tail: shape must be >= 1");
    if (!(rate > 0.0))
        throw std::domain_error("erlang_tail: rate must be > 0");
    if (t <= 0.0)
        return 1.0;
    if (std::isinf(t))
        return 0.0;

    const double x = rate * t;
    const long last = shape - 1;

    if (x < static_cast<double>(last)) {
        // Mode lies inside the retained terms, so the tail is at least about
        // one half. Sum the small complement P(Poisson(x) >= shape) instead;
        // 1 - head is then monotone in t to the last bit.
        const double log_first = -x + static_cast<double>(shape) * std::log(x) - ln_factorial(shape);
        CompensatedSum head;
        double term = 1.0;
        head.add(term);
        for (long j = shape + 1; term > 1e-18 * head.value(); ++j) {
            term *= x / static_cast<double>(j);
            head.add(term);
        }
        return clamp_probability(1.0 - std::exp(log_first + std::log(head.value())));
    }

    // Terms scaled so that term(last) == 1; the recurrence is non-increasing.
    const double log_peak = -x + static_cast<double>(last) * std::log(x) - ln_factorial(last);
    CompensatedSum sum;
    sum.add(1.0);
    double term = 1.0;
    for (long j = last; j > 0; --j) {
        term *= static_cast<double>(j) / x;
        if (term < 1e-300)
            break;
        sum.add(term);
    }
    return clamp_probability(std::exp(log_peak + std::log(sum.value())));
}

double log_sum_terms(std::span<const LogWeightedTerm> terms)
{
    if (terms.empty())
        throw std::domain_error("log_sum_terms: empty sequence");
    double max_log = -kInfinity;
    for (const auto& term : terms)
        max_log = std::max(max_log, term.log_magnitude);
    if (max_log == -kInfinity)
        return -kInfinity;

    CompensatedSum sum;
    for (const auto& term : terms)
        sum.add(std::exp(term.log_magnitude - max_log));
    return max_log + std::log(sum.value());
}

double sum_log_terms(std::span<const LogWeightedTerm> terms)
{
    if (terms.empty())
        throw std::domain_error("sum_log_terms: empty sequence");
    double max_log = -kInfinity;
    for (const auto& term : terms)
        max_log = std::max(max_log, term.log_magnitude);
    if (max_log == -kInfinity)
        return 0.0;

    CompensatedSum sum;
    for (const auto& term : terms)
        sum.add(std::exp(term.log_magnitude - max_log));
    // Rescale in two steps so a large shift does not overflow before the
    // multiplication by a small sum.
    if (max_log > 700.0)
        return std::exp(max_log + std::log(sum.value()));
    return sum.value() * std::exp(max_log);
}

} // namespace lindsum
