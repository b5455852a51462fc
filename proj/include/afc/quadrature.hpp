#pragma once

// Globally adaptive Gauss-Kronrod (G10/K21) integration with an absolute
// tolerance. Nodes and weights come from Boost.Math; the subdivision
// strategy bisects the interval with the largest error estimate until the
// summed estimate drops below the tolerance.

#include "afc/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <span>
#include <string>
#include <vector>

namespace afc::quadrature {

inline constexpr double kDefaultTolerance = 1e-9;

template <typename V>
struct Result {
    V value{};
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline double magnitude(const std::vector<std::complex<double>>& v)
{
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

template <typename V>
void axpy(V& acc, double w, const V& x)
{
    if constexpr (std::is_same_v<V, std::vector<std::complex<double>>>) {
        if (acc.empty()) acc.assign(x.size(), {});
        for (std::size_t i = 0; i < x.size(); ++i) acc[i] += w * x[i];
    } else {
        acc += w * x;
    }
}

template <typename V>
V difference(const V& a, const V& b)
{
    if constexpr (std::is_same_v<V, std::vector<std::complex<double>>>) {
        V d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
        return d;
    } else {
        return a - b;
    }
}

template <typename V>
struct Panel {
    double a, b;
    V value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename V, typename F>
Panel<V> gauss_kronrod_panel(F& f, double a, double b)
{
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& x = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G::weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    V kronrod{};
    V gauss{};
    const V f0 = f(c);
    axpy(kronrod, wk[0], f0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const V fp = f(c + h * x[i]);
        const V fm = f(c - h * x[i]);
        axpy(kronrod, wk[i], fp);
        axpy(kronrod, wk[i], fm);
        if (i & 1) {
            axpy(gauss, wg[i / 2], fp);
            axpy(gauss, wg[i / 2], fm);
        }
    }
    V value{};
    axpy(value, h, kronrod);
    V g{};
    axpy(g, h, gauss);
    const double err = magnitude(difference(value, g));
    return {a, b, std::move(value), err};
}

} // namespace detail

/// Integrates f over [points.front(), points.back()], splitting at every
/// interior point first (discontinuities, peaks, poles). Throws
/// NumericalError with the achieved error estimate when abs_tol is not met
/// within max_intervals panels.
template <typename V = double, typename F>
Result<V> integrate(F&& f, std::span<const double> points,
                    double abs_tol = kDefaultTolerance,
                    int max_intervals = 20000)
{
    std::vector<double> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2) return {};

    std::priority_queue<detail::Panel<V>> queue;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        auto p = detail::gauss_kronrod_panel<V>(f, pts[i], pts[i + 1]);
        total_error += p.error;
        queue.push(std::move(p));
    }

    int count = static_cast<int>(queue.size());
    while (total_error > abs_tol && count < max_intervals) {
        auto worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            queue.push(std::move(worst));
            break;
        }
        auto left = detail::gauss_kronrod_panel<V>(f, worst.a, mid);
        auto right = detail::gauss_kronrod_panel<V>(f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        queue.push(std::move(left));
        queue.push(std::move(right));
        ++count;
    }

    // Re-sum from scratch to avoid drift in the running error total.
    Result<V> result;
    result.intervals = static_cast<int>(queue.size());
    double err = 0.0;
    while (!queue.empty()) {
        const auto& p = queue.top();
        detail::axpy(result.value, 1.0, p.value);
        err += p.error;
        queue.pop();
    }
    result.error = err;
    if (err > abs_tol) {
        throw NumericalError("quadrature did not converge: error estimate " +
                                 std::to_string(err) + " exceeds tolerance " +
                                 std::to_string(abs_tol),
                             err);
    }
    return result;
}

template <typename V = double, typename F>
Result<V> integrate(F&& f, std::initializer_list<double> points,
                    double abs_tol = kDefaultTolerance,
                    int max_intervals = 20000)
{
    std::vector<double> p(points);
    return integrate<V>(std::forward<F>(f), std::span<const double>(p),
                        abs_tol, max_intervals);
}

} // namespace afc::quadrature
