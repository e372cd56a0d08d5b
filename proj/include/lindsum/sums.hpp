#pragma once

#include <vector>

#include "lindsum/family.hpp"

namespace lindsum {

/// Distribution of S_n = X_1 + ... + X_n for IID X_i ~ dist.
struct SumSpec
{
    SumSpec(Distribution dist, int n);

    Distribution dist;
    int n;
};

struct ErlangComponent
{
    double weight;
    double log_weight;
    long shape;
};

/// Exact finite-mixture form of S_n: sum_r w_r Erlang(n + k r, theta),
/// r = 0..n. Shapes are strictly increasing and the weights sum to one.
class ErlangMixture
{
  public:
    explicit ErlangMixture(const SumSpec& spec);

    double rate() const noexcept { return rate_; }
    const std::vector<ErlangComponent>& components() const noexcept { return components_; }
    /// ln of the weight total before normalization; zero up to rounding.
    double raw_log_total() const noexcept { return raw_log_total_; }

    double pdf(double x) const;
    double survival(double t) const;
    double cdf(double t) const { return 1.0 - survival(t); }
    /// E[S^m] = sum_r w_r (m_r + m - 1)! / ((m_r - 1)! theta^m)
    double moment(int m) const;

  private:
    double rate_;
    double raw_log_total_;
    std::vector<ErlangComponent> components_;
};

/// Closed-form density of S_n:
///   c^n e^{-theta x} sum_r C(n,r) alpha^{n-r} (k!)^r x^{n+kr-1} / (n+kr-1)!
/// evaluated term by term in log space.
double sum_pdf(const SumSpec& spec, double x);

/// ln f_{S_n}(x); -inf where the density is zero.
double log_sum_pdf(const SumSpec& spec, double x);

inline ErlangMixture erlang_mixture(const SumSpec& spec) { return ErlangMixture(spec); }

double sum_survival(const SumSpec& spec, double t);
double sum_cdf(const SumSpec& spec, double t);

/// E[S_n^m] through the Erlang-mixture representation.
double sum_moment(const SumSpec& spec, int m);
double sum_mean(const SumSpec& spec);
double sum_variance(const SumSpec& spec);

/// Central shape summary derived from the first four raw moments.
struct MomentSummary
{
    double mean;
    double variance;
    double skewness;
    /// Non-excess kurtosis, E[(S - mean)^4] / variance^2.
    double kurtosis;
};

MomentSummary moment_summary(const SumSpec& spec);

} // namespace lindsum
