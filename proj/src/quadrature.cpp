#include "lindsum/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace lindsum {

namespace {

// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights on the even-indexed nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment
{
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod15(const Integrand& f, double a, double b)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    const double fc = f(center);
    double result_gauss = fc * kWg[3];
    double result_kronrod = fc * kWgk[7];
    double result_abs = std::abs(result_kronrod);
    double fv1[7];
    double fv2[7];

    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        result_gauss += kWg[j] * (f1 + f2);
        result_kronrod += kWgk[jtw] * (f1 + f2);
        result_abs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        result_kronrod += kWgk[jtwm1] * (f1 + f2);
        result_abs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }

    const double mean = result_kronrod * 0.5;
    double result_asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        result_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const double value = result_kronrod * half;
    result_abs *= abs_half;
    result_asc *= abs_half;
    double error = std::abs((result_kronrod - result_gauss) * half);

    // QUADPACK error scaling, including the round-off floor.
    if (result_asc != 0.0 && error != 0.0)
        error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
    if (result_abs > tiny / (50.0 * eps))
        error = std::max(50.0 * eps * result_abs, error);

    return {a, b, value, error};
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureOptions& options)
{
    std::priority_queue<Segment> heap;
    Segment first = kronrod15(f, a, b);
    std::size_t evaluations = 15;
    double total = first.value;
    double total_error = first.error;
    heap.push(first);

    auto converged = [&] {
        return total_error <= std::max(options.abs_tol, options.rel_tol * std::abs(total));
    };

    while (!converged()) {
        if (heap.size() >= options.max_intervals) {
            // Re-sum exactly to drop the drift of the running totals.
            QuadratureResult best{0.0, 0.0, evaluations};
            while (!heap.empty()) {
                best.value += heap.top().value;
                best.error_estimate += heap.top().error;
                heap.pop();
            }
            throw QuadratureError("integrate: subdivision budget of " +
                                      std::to_string(options.max_intervals) +
                                      " intervals exhausted (error estimate " +
                                      std::to_string(best.error_estimate) + ")",
                                  best);
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = kronrod15(f, worst.a, mid);
        const Segment right = kronrod15(f, mid, worst.b);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    QuadratureResult result{0.0, 0.0, evaluations};
    CompensatedSum value;
    CompensatedSum error;
    while (!heap.empty()) {
        value.add(heap.top().value);
        error.add(heap.top().error);
        heap.pop();
    }
    result.value = value.value();
    result.error_estimate = error.value();
    return result;
}

} // namespace

QuadratureResult integrate(const Integrand& f, double lower, double upper,
                           const QuadratureOptions& options)
{
    if (!(options.abs_tol > 0.0) && !(options.rel_tol > 0.0))
        throw std::domain_error("integrate: tolerance must be > 0");
    if (std::isnan(lower) || std::isnan(upper) || std::isinf(lower))
        throw std::domain_error("integrate: lower limit must be finite");
    if (upper == lower)
        return {};
    if (std::isinf(upper)) {
        if (upper < 0.0)
            throw std::domain_error("integrate: upper limit must be >= lower");
        const Integrand mapped = [&f, lower](double u) {
            const double one_minus = 1.0 - u;
            const double x = lower + u / one_minus;
            const double fx = f(x);
            return fx == 0.0 ? 0.0 : fx / (one_minus * one_minus);
        };
        return integrate_finite(mapped, 0.0, 1.0, options);
    }
    if (upper < lower) {
        QuadratureResult r = integrate_finite(f, upper, lower, options);
        r.value = -r.value;
        return r;
    }
    return integrate_finite(f, lower, upper, options);
}

} // namespace lindsum
