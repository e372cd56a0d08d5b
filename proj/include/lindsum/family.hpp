#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "lindsum/random.hpp"

namespace lindsum {

enum class Member { Lindley, Shanker, Akash, Ishita, Pranav, Rani, RamAwadh };

/// Whether the constant term of the density polynomial is 1 or theta.
enum class AlphaKind { Unit, Theta };

/// Every member has density c * (alpha + x^degree) * e^{-theta x}, which is
/// the mixture p * Exp(theta) + (1 - p) * Erlang(degree + 1, theta).
struct MemberTraits
{
    Member member;
    std::string_view name;
    int degree;
    AlphaKind alpha_kind;
};

inline constexpr std::array<MemberTraits, 7> kMembers = {{
    {Member::Lindley, "lindley", 1, AlphaKind::Unit},
    {Member::Shanker, "shanker", 1, AlphaKind::Theta},
    {Member::Akash, "akash", 2, AlphaKind::Unit},
    {Member::Ishita, "ishita", 2, AlphaKind::Theta},
    {Member::Pranav, "pranav", 3, AlphaKind::Theta},
    {Member::Rani, "rani", 4, AlphaKind::Theta},
    {Member::RamAwadh, "ramawadh", 5, AlphaKind::Theta},
}};

const MemberTraits& traits(Member member);

/// Canonical lower-case name ("lindley", ..., "ramawadh").
std::string_view member_name(Member member);

/// Case-insensitive lookup of the seven canonical spellings.
std::optional<Member> parse_member(std::string_view name);

/// A family member with its rate parameter. Immutable; theta > 0.
class Distribution
{
  public:
    /// Throws std::domain_error unless theta is finite and > 0.
    Distribution(Member member, double theta);

    Member member() const noexcept { return member_; }
    double theta() const noexcept { return theta_; }
    int degree() const noexcept { return traits(member_).degree; }

    /// Constant term of the density polynomial: 1 or theta.
    double alpha() const noexcept;
    /// theta^{k+1} / (alpha theta^k + k!)
    double norm_const() const noexcept { return norm_const_; }
    /// Exponential component weight p = alpha theta^k / (alpha theta^k + k!).
    double mixture_weight() const noexcept { return mixture_weight_; }

    double pdf(double x) const noexcept;
    double survival(double x) const noexcept;
    double cdf(double x) const noexcept { return 1.0 - survival(x); }

    /// E[X^m].
    double moment(int m) const;

    /// Composition sampler: Exp(theta) with probability p, otherwise the
    /// sum of degree + 1 independent Exp(theta) variates.
    double sample(RandomStream& rng) const;

    friend bool operator==(const Distribution&, const Distribution&) = default;

  private:
    Member member_;
    double theta_;
    double norm_const_;
    double log_norm_const_;
    double mixture_weight_;
};

} // namespace lindsum
