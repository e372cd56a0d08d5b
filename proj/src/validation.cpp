#include "lindsum/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "lindsum/reliability.hpp"

namespace lindsum {

double convolution_oracle_pdf(const SumSpec& spec, double x, double tol)
{
    if (spec.n != 2 && spec.n != 3)
        throw std::domain_error("convolution_oracle_pdf: n must be 2 or 3");
    if (x <= 0.0)
        return 0.0;

    const QuadratureOptions options{std::numeric_limits<double>::min(), tol, 2000};
    const Distribution& d = spec.dist;

    // Density of X_1 + X_2 at y.
    auto pair_density = [&](double y) {
        if (y <= 0.0)
            return 0.0;
        return integrate([&](double u) { return d.pdf(u) * d.pdf(y - u); }, 0.0, y, options).value;
    };

    if (spec.n == 2)
        return pair_density(x);
    return integrate([&](double u) { return d.pdf(u) * pair_density(x - u); }, 0.0, x, options)
        .value;
}

double sample_sum(const SumSpec& spec, RandomStream& rng)
{
    double total = 0.0;
    for (int i = 0; i < spec.n; ++i)
        total += spec.dist.sample(rng);
    return total;
}

double ks_threshold_99(std::size_t n)
{
    return 1.63 / std::sqrt(static_cast<double>(n));
}

KsReport ks_statistic(std::span<const double> sorted_samples,
                      const std::function<double(double)>& cdf, std::optional<double> threshold)
{
    if (sorted_samples.empty())
        throw std::domain_error("ks_statistic: empty sample");
    if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end()))
        throw std::domain_error("ks_statistic: samples must be sorted ascending");

    const std::size_t count = sorted_samples.size();
    const double n = static_cast<double>(count);
    double distance = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double f = cdf(sorted_samples[i]);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        distance = std::max({distance, std::abs(above), std::abs(below)});
    }
    KsReport report;
    report.sample_count = count;
    report.ks_distance = distance;
    report.threshold = threshold.value_or(ks_threshold_99(count));
    report.pass = distance <= report.threshold;
    return report;
}

std::string_view status_name(CheckStatus status)
{
    switch (status) {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    case CheckStatus::Error:
        return "error";
    }
    return "error";
}

bool VerifyReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.status == CheckStatus::Pass; });
}

std::size_t VerifyReport::count(CheckStatus status) const
{
    return static_cast<std::size_t>(std::count_if(
        checks.begin(), checks.end(), [status](const CheckResult& c) { return c.status == status; }));
}

namespace {

enum class Bound { AtMost, AtLeast };

std::string fmt_theta(double theta)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", theta);
    return buf;
}

std::string slice_id(std::string_view group, std::string_view what, Member m, double theta,
                     int n)
{
    std::string id(group);
    id += '/';
    if (!what.empty()) {
        id += what;
        id += '/';
    }
    id += member_name(m);
    id += "/theta=" + fmt_theta(theta) + "/n=" + std::to_string(n);
    return id;
}

double relative_error(double value, double reference)
{
    if (reference == 0.0)
        return std::abs(value);
    return std::abs(value - reference) / std::abs(reference);
}

class Runner
{
  public:
    explicit Runner(const VerifyConfig& config) : config_(config) {}

    bool enabled(const std::string& group) const
    {
        return config_.only.empty() || config_.only.count(group) > 0;
    }

    std::vector<Member> members() const
    {
        if (!config_.members.empty())
            return config_.members;
        std::vector<Member> all;
        for (const auto& t : kMembers)
            all.push_back(t.member);
        return all;
    }

    bool member_selected(Member m) const
    {
        const auto ms = members();
        return std::find(ms.begin(), ms.end(), m) != ms.end();
    }

    std::vector<double> thetas(std::vector<double> defaults) const
    {
        if (config_.theta)
            return {*config_.theta};
        return defaults;
    }

    QuadratureOptions quad(double rel = 0.0) const
    {
        return {config_.quad_tol, rel, config_.max_intervals};
    }

    /// Integral over [0, inf) split at `split` so the mapped tail stays well resolved.
    double half_line(const Integrand& f, double split, double rel = 0.0) const
    {
        const auto head = integrate(f, 0.0, split, quad(rel));
        const auto tail = integrate(f, split, kInfinity, quad(rel));
        return head.value + tail.value;
    }

    template <class Fn>
    void check(std::string id, double bound, Bound kind, Fn&& measure)
    {
        CheckResult result{std::move(id), CheckStatus::Error,
                           std::numeric_limits<double>::quiet_NaN(), bound, {}};
        try {
            result.value = measure();
            const bool ok = kind == Bound::AtMost ? result.value <= bound : result.value >= bound;
            result.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
        } catch (const QuadratureError& e) {
            result.value = std::numeric_limits<double>::quiet_NaN();
            result.detail = std::string("quadrature did not converge: ") + e.what();
        } catch (const std::exception& e) {
            result.detail = e.what();
        }
        report_.checks.push_back(std::move(result));
    }

    VerifyReport take() { return std::move(report_); }

    const VerifyConfig& config() const { return config_; }

  private:
    const VerifyConfig& config_;
    VerifyReport report_;
};

void run_table4(Runner& run)
{
    struct Row
    {
        double theta;
        double lindley;
        double exponential;
    };
    // Published two-decimal MTTF comparison, n = 5.
    constexpr Row printed[] = {
        {0.1, 95.45, 40.0}, {0.5, 16.67, 10.0}, {1.0, 7.5, 5.0}, {3.0, 2.08, 1.67}};

    for (const auto& row : printed) {
        if (run.config().theta && *run.config().theta != row.theta)
            continue;
        const std::string suffix = "/theta=" + fmt_theta(row.theta) + "/n=5";
        run.check("table4/lindley" + suffix, 0.005, Bound::AtMost,
                  [&] { return std::abs(lindley_mttf(row.theta, 5) - row.lindley); });
        run.check("table4/exponential" + suffix, 0.005, Bound::AtMost,
                  [&] { return std::abs(exponential_mttf(row.theta, 5) - row.exponential); });
    }
}

void run_figure1(Runner& run)
{
    const auto grid = uniform_grid(0.0, 100.0, 101);
    for (double theta : run.thetas({0.1, 0.5, 1.0, 3.0})) {
        const std::string suffix = "/theta=" + fmt_theta(theta) + "/n=5";
        std::vector<double> lindley;
        std::vector<double> expo;
        for (double t : grid) {
            lindley.push_back(lindley_reliability(theta, 5, t));
            expo.push_back(exponential_reliability(theta, 5, t));
        }
        run.check("figure1/dominance" + suffix, 0.0, Bound::AtLeast, [&] {
            double gap = kInfinity;
            for (std::size_t i = 0; i < grid.size(); ++i)
                gap = std::min(gap, lindley[i] - expo[i]);
            return gap;
        });
        run.check("figure1/monotone" + suffix, 0.0, Bound::AtMost, [&] {
            double rise = 0.0;
            for (std::size_t i = 1; i < grid.size(); ++i) {
                rise = std::max(rise, lindley[i] - lindley[i - 1]);
                rise = std::max(rise, expo[i] - expo[i - 1]);
            }
            return rise;
        });
        run.check("figure1/origin" + suffix, 0.0, Bound::AtMost, [&] {
            return std::max(std::abs(1.0 - lindley.front()), std::abs(1.0 - expo.front()));
        });
    }
}

void run_dual(Runner& run)
{
    const auto grid = uniform_grid(0.0, 100.0, 101);
    for (double theta : run.thetas({0.1, 0.5, 1.0, 3.0})) {
        for (int n = 1; n <= 5; ++n) {
            const StandbyModel model(Distribution(Member::Lindley, theta), n);
            const std::string suffix = "/theta=" + fmt_theta(theta) + "/n=" + std::to_string(n);
            run.check("dual/tail" + suffix, 1e-10, Bound::AtMost, [&] {
                double worst = 0.0;
                for (double t : grid)
                    worst = std::max(worst, std::abs(lindley_reliability(theta, n, t) -
                                                     family_reliability(model, t)));
                return worst;
            });
            run.check("dual/mttf-quadrature" + suffix, 1e-6, Bound::AtMost, [&] {
                const double area = run.half_line(
                    [&](double t) { return lindley_reliability(theta, n, t); },
                    lindley_mttf(theta, n), 1e-12);
                return relative_error(area, lindley_mttf(theta, n));
            });
            run.check("dual/mttf-moment" + suffix, 1e-12, Bound::AtMost, [&] {
                return relative_error(family_mttf(model), lindley_mttf(theta, n));
            });
        }
    }
}

void run_convolution(Runner& run)
{
    for (Member m : run.members()) {
        for (double theta : run.thetas({0.5, 1.0, 2.0})) {
            for (int n : {2, 3}) {
                const SumSpec spec(Distribution(m, theta), n);
                run.check(slice_id("convolution", "", m, theta, n), 1e-6, Bound::AtMost, [&] {
                    const double span = 5.0 * sum_mean(spec);
                    double worst = 0.0;
                    for (int i = 1; i <= 10; ++i) {
                        const double x = span * i / 10.0;
                        const double oracle = convolution_oracle_pdf(spec, x, run.config().quad_tol);
                        worst = std::max(worst, relative_error(sum_pdf(spec, x), oracle));
                    }
                    return worst;
                });
            }
        }
    }
}

void run_normalization(Runner& run)
{
    for (Member m : run.members()) {
        for (double theta : run.thetas({0.5, 1.0, 2.0})) {
            for (int n : {1, 2, 3, 5, 10}) {
                const SumSpec spec(Distribution(m, theta), n);
                const double split = sum_mean(spec);
                run.check(slice_id("normalization", "mass", m, theta, n), 1e-8, Bound::AtMost, [&] {
                    const double mass =
                        run.half_line([&](double x) { return sum_pdf(spec, x); }, split);
                    return std::abs(mass - 1.0);
                });
                run.check(slice_id("normalization", "moments", m, theta, n), 1e-6, Bound::AtMost,
                          [&] {
                              double worst = 0.0;
                              for (int order = 1; order <= 4; ++order) {
                                  const double quadrature = run.half_line(
                                      [&](double x) { return std::pow(x, order) * sum_pdf(spec, x); },
                                      split, 1e-10);
                                  worst = std::max(
                                      worst, relative_error(sum_moment(spec, order), quadrature));
                              }
                              return worst;
                          });
            }
        }
    }
}

void run_montecarlo(Runner& run)
{
    const std::size_t count = run.config().mc_samples;
    for (Member m : run.members()) {
        for (double theta : run.thetas({1.0})) {
            for (int n : {2, 5}) {
                const SumSpec spec(Distribution(m, theta), n);
                const ErlangMixture mixture(spec);
                const double mean = mixture.moment(1);
                const double second = mixture.moment(2);
                const double se_mean = std::sqrt((second - mean * mean) / count);
                const double se_second =
                    std::sqrt((mixture.moment(4) - second * second) / count);

                for (std::uint64_t seed : run.config().seeds) {
                    std::vector<double> draws(count);
                    RandomStream rng(seed);
                    for (double& v : draws)
                        v = sample_sum(spec, rng);

                    const std::string what = "seed=" + std::to_string(seed);
                    const std::string tail = what + "/" + std::string(member_name(m)) +
                                             "/theta=" + fmt_theta(theta) +
                                             "/n=" + std::to_string(n);
                    run.check("montecarlo/mean/" + tail, 4.0, Bound::AtMost, [&] {
                        CompensatedSum s;
                        for (double v : draws)
                            s.add(v);
                        return std::abs(s.value() / count - mean) / se_mean;
                    });
                    run.check("montecarlo/second-moment/" + tail, 4.0, Bound::AtMost, [&] {
                        CompensatedSum s;
                        for (double v : draws)
                            s.add(v * v);
                        return std::abs(s.value() / count - second) / se_second;
                    });
                    std::sort(draws.begin(), draws.end());
                    const KsReport ks =
                        ks_statistic(draws, [&](double x) { return mixture.cdf(x); });
                    run.check("montecarlo/ks/" + tail, ks.threshold, Bound::AtMost,
                              [&] { return ks.ks_distance; });
                }
            }
        }
    }
}

void run_stability(Runner& run)
{
    if (!run.member_selected(Member::RamAwadh))
        return;
    for (double theta : run.thetas({1.0})) {
        const SumSpec spec(Distribution(Member::RamAwadh, theta), 50);
        run.check(slice_id("stability", "finite", Member::RamAwadh, theta, 50), 0.0,
                  Bound::AtMost, [&] {
                      // Count of non-finite or negative densities on (0, 500].
                      double bad = 0.0;
                      for (int i = 1; i <= 5000; ++i) {
                          const double v = sum_pdf(spec, 0.1 * i);
                          if (!std::isfinite(v) || v < 0.0)
                              bad += 1.0;
                      }
                      return bad;
                  });
        run.check(slice_id("stability", "mass", Member::RamAwadh, theta, 50), 1e-6, Bound::AtMost,
                  [&] {
                      const double mass = run.half_line([&](double x) { return sum_pdf(spec, x); },
                                                        sum_mean(spec));
                      return std::abs(mass - 1.0);
                  });
    }
}

void run_reductions(Runner& run)
{
    for (Member m : run.members()) {
        for (double theta : run.thetas({0.1, 0.5, 1.0, 2.0, 5.0})) {
            const Distribution dist(m, theta);
            const SumSpec single(dist, 1);
            run.check(slice_id("reductions", "single-pdf", m, theta, 1), 1e-12, Bound::AtMost, [&] {
                double worst = 0.0;
                const double span = 20.0 * dist.moment(1);
                for (int i = 0; i <= 200; ++i) {
                    const double x = span * i / 200.0;
                    worst = std::max(worst, relative_error(sum_pdf(single, x), dist.pdf(x)));
                }
                return worst;
            });
            run.check(slice_id("reductions", "weights", m, theta, 20), 1e-10, Bound::AtMost, [&] {
                double worst = 0.0;
                for (int n = 1; n <= 20; ++n) {
                    const ErlangMixture mixture(SumSpec(dist, n));
                    CompensatedSum total;
                    for (const auto& c : mixture.components())
                        total.add(c.weight);
                    worst = std::max(worst, std::abs(total.value() - 1.0));
                    worst = std::max(worst, std::abs(std::expm1(mixture.raw_log_total())));
                }
                return worst;
            });
            run.check(slice_id("reductions", "mixture-density", m, theta, 20), 1e-10,
                      Bound::AtMost, [&] {
                          double worst = 0.0;
                          for (int n : {1, 2, 5, 20}) {
                              const SumSpec spec(dist, n);
                              const ErlangMixture mixture(spec);
                              for (int i = -20; i <= 30; ++i) {
                                  const double x = std::pow(10.0, i / 10.0) / theta;
                                  worst = std::max(worst,
                                                   relative_error(mixture.pdf(x), sum_pdf(spec, x)));
                              }
                          }
                          return worst;
                      });
        }
    }
}

} // namespace

VerifyReport verify_all(const VerifyConfig& config)
{
    const auto& groups = verify_groups();
    for (const auto& g : config.only)
        if (std::find(groups.begin(), groups.end(), g) == groups.end())
            throw std::invalid_argument("verify_all: unknown check group '" + g + "'");
    if (config.theta && !(*config.theta > 0.0))
        throw std::invalid_argument("verify_all: theta must be > 0");
    if (config.mc_samples == 0)
        throw std::invalid_argument("verify_all: mc_samples must be >= 1");

    Runner run(config);
    if (run.enabled("table4"))
        run_table4(run);
    if (run.enabled("figure1"))
        run_figure1(run);
    if (run.enabled("dual"))
        run_dual(run);
    if (run.enabled("convolution"))
        run_convolution(run);
    if (run.enabled("normalization"))
        run_normalization(run);
    if (run.enabled("montecarlo"))
        run_montecarlo(run);
    if (run.enabled("stability"))
        run_stability(run);
    if (run.enabled("reductions"))
        run_reductions(run);
    return run.take();
}

} // namespace lindsum
