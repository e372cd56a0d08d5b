#include "lindsum/family.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "lindsum/numerics.hpp"

namespace lindsum {

const MemberTraits& traits(Member member)
{
    return kMembers[static_cast<std::size_t>(member)];
}

std::string_view member_name(Member member)
{
    return traits(member).name;
}

std::optional<Member> parse_member(std::string_view name)
{
    std::string lowered(name);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto& t : kMembers)
        if (t.name == lowered)
            return t.member;
    return std::nullopt;
}

Distribution::Distribution(Member member, double theta) : member_(member), theta_(theta)
{
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw std::domain_error("Distribution: theta must be finite and > 0");

    const int k = degree();
    const double log_theta = std::log(theta);
    // ln(alpha theta^k) and ln(k!)
    const double log_exp_part = std::log(alpha()) + k * log_theta;
    const double log_gamma_part = ln_factorial(k);
    const double log_denominator =
        std::max(log_exp_part, log_gamma_part) +
        std::log1p(std::exp(-std::abs(log_exp_part - log_gamma_part)));

    log_norm_const_ = (k + 1) * log_theta - log_denominator;
    norm_const_ = std::exp(log_norm_const_);
    mixture_weight_ = std::exp(log_exp_part - log_denominator);
}

double Distribution::alpha() const noexcept
{
    return traits(member_).alpha_kind == AlphaKind::Unit ? 1.0 : theta_;
}

double Distribution::pdf(double x) const noexcept
{
    if (x < 0.0)
        return 0.0;
    if (x == 0.0)
        return norm_const_ * alpha();
    if (std::isinf(x))
        return 0.0;
    const int k = degree();
    const LogWeightedTerm terms[] = {{std::log(alpha())}, {k * std::log(x)}};
    return std::exp(log_norm_const_ + log_sum_terms(terms) - theta_ * x);
}

double Distribution::survival(double x) const noexcept
{
    if (x <= 0.0)
        return 1.0;
    const double p = mixture_weight_;
    return clamp_probability(p * std::exp(-theta_ * x) +
                             (1.0 - p) * erlang_tail(degree() + 1, theta_, x));
}

double Distribution::moment(int m) const
{
    if (m < 0)
        throw std::domain_error("moment: order must be >= 0");
    const int k = degree();
    const double log_theta = std::log(theta_);
    const LogWeightedTerm terms[] = {
        {std::log(alpha()) + ln_factorial(m) - (m + 1) * log_theta},
        {ln_factorial(m + k) - (m + k + 1) * log_theta},
    };
    return std::exp(log_norm_const_ + log_sum_terms(terms));
}

double Distribution::sample(RandomStream& rng) const
{
    if (rng.uniform() < mixture_weight_)
        return rng.exponential(theta_);
    double total = 0.0;
    for (int i = 0; i <= degree(); ++i)
        total += rng.exponential(theta_);
    return total;
}

} // namespace lindsum
