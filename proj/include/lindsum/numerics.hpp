#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace lindsum {

/// A strictly positive summand stored as its natural logarithm.
struct LogWeightedTerm
{
    double log_magnitude;
};

/// Neumaier-compensated running sum.
class CompensatedSum
{
  public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// ln(n!). Exact table lookup for n <= 20, lgamma beyond.
double ln_factorial(long n);

/// ln C(n, r). Throws std::domain_error when r > n or either argument is negative.
double ln_binomial(long n, long r);

/// P(Erlang(shape, rate) > t) = e^{-rate t} sum_{j<shape} (rate t)^j / j!
///
/// The Poisson terms are generated by ratio recurrences from the largest
/// retained term, so the result stays accurate when e^{-rate t} alone would
/// underflow. When rate t < shape - 1 the value is 1 minus the (small) upper
/// Poisson tail instead. Result is clamped to [0, 1].
double erlang_tail(long shape, double rate, double t);

/// ln(sum exp(term.log_magnitude)). Terms equal to -inf are skipped; an
/// all-(-inf) input yields -inf. Throws std::domain_error on an empty input.
double log_sum_terms(std::span<const LogWeightedTerm> terms);

/// sum exp(term.log_magnitude) via the max-shift. May return +inf when the
/// true sum exceeds double range; use log_sum_terms for a log-scale result.
double sum_log_terms(std::span<const LogWeightedTerm> terms);

inline double clamp_probability(double p) noexcept
{
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

// ---------------------------------------------------------------------------
// Adaptive quadrature

struct QuadratureResult
{
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

struct QuadratureOptions
{
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    /// Maximum number of subintervals held by the adaptive bisection.
    std::size_t max_intervals = 2000;
};

/// Raised when the subdivision budget is exhausted before the error
/// estimate reaches the requested tolerance. Carries the best estimate.
class QuadratureError : public std::runtime_error
{
  public:
    QuadratureError(const std::string& what, QuadratureResult best)
        : std::runtime_error(what), best_(best)
    {
    }
    const QuadratureResult& best() const noexcept { return best_; }

  private:
    QuadratureResult best_;
};

using Integrand = std::function<double(double)>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over
/// [lower, upper]. upper may be +inf, in which case the range is mapped onto
/// [0, 1) with x = lower + u / (1 - u). Converges when the summed error
/// estimate is <= max(abs_tol, rel_tol * |value|).
QuadratureResult integrate(const Integrand& f, double lower, double upper,
                           const QuadratureOptions& options);

inline QuadratureResult integrate(const Integrand& f, double lower, double upper,
                                  double tol = 1e-10)
{
    return integrate(f, lower, upper, QuadratureOptions{tol, 0.0, 2000});
}

} // namespace lindsum
