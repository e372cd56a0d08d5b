#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lindsum/family.hpp"
#include "lindsum/sums.hpp"

namespace lindsum {

/// 1-out-of-n cold-standby system: one active unit plus n - 1 unpowered
/// spares, all with lifetime distribution failure_dist. The system
/// lifetime is S_n.
struct StandbyModel
{
    StandbyModel(Distribution failure, int units);

    Distribution failure_dist;
    int n;

    SumSpec sum_spec() const { return SumSpec(failure_dist, n); }
};

/// Cold-standby system of n exponential(theta) units.
struct ExponentialModel
{
    ExponentialModel(double rate, int units);

    double theta;
    int n;
};

/// Closed double-sum reliability of a Lindley cold-standby system:
///   e^{-theta t} sum_{i<n} sum_{j<=i} a^i C(i,j) [t^{i+j}/(i+j)! + b t^{i+j+1}/(i+j+1)!]
/// with a = theta^2/(1+theta), b = theta/(1+theta). Evaluated independently of
/// the Erlang-mixture tail.
double lindley_reliability(double theta, int n, double t);

/// n (2 + theta) / (theta (1 + theta))
double lindley_mttf(double theta, int n);

/// e^{-theta t} sum_{i<n} (theta t)^i / i!
double exponential_reliability(double theta, int n, double t);
double exponential_mttf(double theta, int n);

double family_reliability(const StandbyModel& model, double t);
/// n E[X], from the sum's first moment.
double family_mttf(const StandbyModel& model);

struct MttfRow
{
    double theta;
    double lindley;
    double exponential;
};

std::vector<MttfRow> mttf_table(std::span<const double> thetas, int n);

using CurveModel = std::variant<StandbyModel, ExponentialModel>;

std::string model_label(const CurveModel& model);
double reliability(const CurveModel& model, double t);

struct CurvePoint
{
    double t;
    double r;
};

struct ReliabilityCurve
{
    std::string label;
    std::vector<CurvePoint> points;
};

/// Uniform grid on [0, t_max] with `points` samples, one curve per model.
/// Throws std::domain_error unless t_max > 0 and points >= 2.
std::vector<ReliabilityCurve> reliability_curve(std::span<const CurveModel> models, double t_max,
                                                int points);

/// The uniform grid used by reliability_curve.
std::vector<double> uniform_grid(double lower, double upper, int points);

} // namespace lindsum
