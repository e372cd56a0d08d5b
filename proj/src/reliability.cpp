#include "lindsum/reliability.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lindsum/numerics.hpp"

namespace lindsum {

namespace {

void require_rate(double theta)
{
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw std::domain_error("theta must be finite and > 0");
}

void require_units(int n)
{
    if (n < 1)
        throw std::domain_error("n must be >= 1");
}

} // namespace

StandbyModel::StandbyModel(Distribution failure, int units) : failure_dist(failure), n(units)
{
    require_units(units);
}

ExponentialModel::ExponentialModel(double rate, int units) : theta(rate), n(units)
{
    require_rate(rate);
    require_units(units);
}

double lindley_reliability(double theta, int n, double t)
{
    require_rate(theta);
    require_units(n);
    if (t <= 0.0)
        return 1.0;

    const double log_a = 2.0 * std::log(theta) - std::log1p(theta);
    const double log_b = std::log(theta) - std::log1p(theta);
    const double log_t = std::log(t);

    std::vector<LogWeightedTerm> terms;
    terms.reserve(static_cast<std::size_t>(n) * (n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double head = i * log_a + ln_binomial(i, j);
            const int p = i + j;
            terms.push_back({head + p * log_t - ln_factorial(p)});
            terms.push_back({log_b + head + (p + 1) * log_t - ln_factorial(p + 1)});
        }
    }
    return clamp_probability(std::exp(log_sum_terms(terms) - theta * t));
}

double lindley_mttf(double theta, int n)
{
    require_rate(theta);
    require_units(n);
    return n * (2.0 + theta) / (theta * (1.0 + theta));
}

double exponential_reliability(double theta, int n, double t)
{
    require_rate(theta);
    require_units(n);
    return erlang_tail(n, theta, t);
}

double exponential_mttf(double theta, int n)
{
    require_rate(theta);
    require_units(n);
    return n / theta;
}

double family_reliability(const StandbyModel& model, double t)
{
    return sum_survival(model.sum_spec(), t);
}

double family_mttf(const StandbyModel& model)
{
    return sum_mean(model.sum_spec());
}

std::vector<MttfRow> mttf_table(std::span<const double> thetas, int n)
{
    std::vector<MttfRow> rows;
    rows.reserve(thetas.size());
    for (double theta : thetas)
        rows.push_back({theta, lindley_mttf(theta, n), exponential_mttf(theta, n)});
    return rows;
}

std::string model_label(const CurveModel& model)
{
    char buffer[96];
    if (const auto* standby = std::get_if<StandbyModel>(&model)) {
        std::snprintf(buffer, sizeof buffer, "%s(theta=%g,n=%d)",
                      std::string(member_name(standby->failure_dist.member())).c_str(),
                      standby->failure_dist.theta(), standby->n);
    } else {
        const auto& expo = std::get<ExponentialModel>(model);
        std::snprintf(buffer, sizeof buffer, "exponential(theta=%g,n=%d)", expo.theta, expo.n);
    }
    return buffer;
}

double reliability(const CurveModel& model, double t)
{
    if (const auto* standby = std::get_if<StandbyModel>(&model))
        return family_reliability(*standby, t);
    const auto& expo = std::get<ExponentialModel>(model);
    return exponential_reliability(expo.theta, expo.n, t);
}

std::vector<double> uniform_grid(double lower, double upper, int points)
{
    if (points < 1)
        throw std::domain_error("grid needs at least one point");
    if (points == 1)
        return {lower};
    if (!(upper > lower))
        throw std::domain_error("grid upper limit must exceed lower limit");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double step = (upper - lower) / (points - 1);
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] = lower + i * step;
    grid.back() = upper;
    return grid;
}

std::vector<ReliabilityCurve> reliability_curve(std::span<const CurveModel> models, double t_max,
                                                int points)
{
    if (!(t_max > 0.0))
        throw std::domain_error("reliability_curve: t_max must be > 0");
    if (points < 2)
        throw std::domain_error("reliability_curve: points must be >= 2");

    const std::vector<double> grid = uniform_grid(0.0, t_max, points);
    std::vector<ReliabilityCurve> curves;
    curves.reserve(models.size());
    for (const auto& model : models) {
        ReliabilityCurve curve{model_label(model), {}};
        curve.points.reserve(grid.size());
        for (double t : grid)
            curve.points.push_back({t, reliability(model, t)});
        curves.push_back(std::move(curve));
    }
    return curves;
}

} // namespace lindsum
