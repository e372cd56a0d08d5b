#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lindsum/family.hpp"
#include "lindsum/numerics.hpp"
#include "lindsum/random.hpp"
#include "lindsum/sums.hpp"

namespace lindsum {

// ---------------------------------------------------------------------------
// Brute-force oracles

/// Density of S_n (n = 2 or 3) by direct nested quadrature of the
/// convolution integral of the single-variable densities. `tol` is the
/// relative tolerance requested from every quadrature level.
/// Throws std::domain_error for other n; QuadratureError propagates.
double convolution_oracle_pdf(const SumSpec& spec, double x, double tol = 1e-10);

/// One draw of X_1 + ... + X_n.
double sample_sum(const SumSpec& spec, RandomStream& rng);

struct KsReport
{
    std::size_t sample_count = 0;
    double ks_distance = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// 99% asymptotic Kolmogorov band, 1.63 / sqrt(N).
double ks_threshold_99(std::size_t n);

/// One-sample KS distance of ascending `sorted_samples` against `cdf`.
/// Throws std::domain_error when the input is empty or not sorted.
KsReport ks_statistic(std::span<const double> sorted_samples,
                      const std::function<double(double)>& cdf,
                      std::optional<double> threshold = std::nullopt);

// ---------------------------------------------------------------------------
// Verification suite

/// Check groups, one per acceptance area.
inline const std::vector<std::string>& verify_groups()
{
    static const std::vector<std::string> groups = {
        "table4",      "figure1",    "dual",      "convolution",
        "normalization", "montecarlo", "stability", "reductions"};
    return groups;
}

struct VerifyConfig
{
    /// Empty means every group.
    std::set<std::string> only;
    /// Empty means all seven members.
    std::vector<Member> members;
    /// When set, replaces every theta list with this single value.
    std::optional<double> theta;

    /// Tolerance requested from the quadrature oracles.
    double quad_tol = 1e-10;
    std::size_t max_intervals = 2000;

    std::size_t mc_samples = 1'000'000;
    std::vector<std::uint64_t> seeds = {kDefaultSeed, 7919, 104729};
};

enum class CheckStatus { Pass, Fail, Error };

std::string_view status_name(CheckStatus status);

struct CheckResult
{
    std::string id;
    CheckStatus status;
    double value;
    double bound;
    std::string detail;
};

struct VerifyReport
{
    std::vector<CheckResult> checks;

    bool all_passed() const;
    std::size_t count(CheckStatus status) const;
};

/// Runs every selected check. Individual failures (including quadrature
/// non-convergence) are recorded, never thrown.
VerifyReport verify_all(const VerifyConfig& config);

/// One line per check: "PASS  id  value=... bound=...".
void write_text(const VerifyReport& report, std::ostream& out);
/// JSON array of {check_id, status, value, bound}.
void write_json(const VerifyReport& report, std::ostream& out);

} // namespace lindsum
