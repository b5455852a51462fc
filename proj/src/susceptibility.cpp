#include "afc/susceptibility.hpp"

#include "afc/errors.hpp"
#include "afc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace afc {

namespace {

constexpr double pi = std::numbers::pi;

void require_inv_finesse(double w)
{
    if (!(w > 0.0 && w < 1.0))
        throw DomainError("inverse finesse must lie in (0, 1), got " + std::to_string(w));
}

// alpha(x) = c0 + sum_k c_k exp(i k pi x), k = 1..K; absorption is the real
// part and dispersion minus the imaginary part.
template <typename Coefficient>
ResponsePoint fourier_response(double x, double c0, int harmonics, Coefficient coefficient)
{
    const std::complex<double> step = std::polar(1.0, pi * x);
    std::complex<double> z = 1.0;
    std::complex<double> sum = c0;
    for (int k = 1; k <= harmonics; ++k) {
        z *= step;
        sum += coefficient(k) * z;
    }
    return {sum.real(), -sum.imag()};
}

ResponsePoint square_series(double x, double w, int harmonics)
{
    // sin(k pi w) by recurrence on exp(i pi w).
    const std::complex<double> step = std::polar(1.0, pi * w);
    std::complex<double> u = 1.0;
    return fourier_response(x, w, harmonics, [&](int k) {
        u *= step;
        const double sign = (k & 1) ? -1.0 : 1.0;
        return (2.0 / pi) * sign * u.imag() / k;
    });
}

ResponsePoint lorentzian_series(double x, double w, int harmonics)
{
    const double decay = -std::exp(-pi * w);
    double factor = 1.0;
    return fourier_response(x, 0.5 * pi * w, harmonics, [&](int) {
        factor *= decay;
        return pi * w * factor;
    });
}

ResponsePoint harmonic_closed(double x, double g)
{
    const double damp = std::exp(-pi * g);
    return {0.5 - 0.5 * damp * std::cos(pi * x), 0.5 * damp * std::sin(pi * x)};
}

ResponsePoint lorentzian_closed(double x, double w, double g, std::optional<int> pair_count)
{
    const double s = w + g;
    if (!pair_count) {
        const double den = std::cosh(pi * s) + std::cos(pi * x);
        return {0.5 * pi * w * std::sinh(pi * s) / den, 0.5 * pi * w * std::sin(pi * x) / den};
    }
    ResponsePoint r;
    for (int k = -*pair_count - 1; k <= *pair_count; ++k) {
        const double u = x + (2 * k + 1);
        const double den = u * u + s * s;
        r.absorption += w * s / den;
        r.dispersion -= w * u / den;
    }
    return r;
}

double nearest_odd(double x)
{
    return 2.0 * std::floor(x / 2.0) + 1.0;
}

} // namespace

std::string_view to_string(ResponseModel model)
{
    switch (model) {
    case ResponseModel::IdealSeries: return "ideal";
    case ResponseModel::IdealExact: return "exact";
    case ResponseModel::Broadened: return "broadened";
    }
    return "unknown";
}

ResponseModel parse_model(std::string_view text)
{
    if (text == "ideal" || text == "series") return ResponseModel::IdealSeries;
    if (text == "exact") return ResponseModel::IdealExact;
    if (text == "broadened") return ResponseModel::Broadened;
    throw DomainError("unknown model '" + std::string(text) +
                      "' (expected ideal, exact or broadened)");
}

ResponsePoint chi_square_series(double nu, double inv_finesse, int harmonics)
{
    require_inv_finesse(inv_finesse);
    if (harmonics < 1) throw DomainError("series truncation order must be >= 1");
    return square_series(nu, inv_finesse, harmonics);
}

ResponsePoint chi_square_exact(double nu, double inv_finesse, std::optional<int> pair_count)
{
    require_inv_finesse(inv_finesse);
    const double w = inv_finesse;
    ResponsePoint r;

    const double m = nearest_odd(nu);
    const bool in_range = !pair_count || std::abs(m) <= 2.0 * *pair_count + 1.0;
    if (in_range) {
        const double d = std::abs(nu - m);
        r.absorption = d < w ? 1.0 : (d == w ? 0.5 : 0.0);
    }

    if (!pair_count) {
        r.dispersion = -(std::log(std::abs(std::cos(0.5 * pi * (nu + w)))) -
                         std::log(std::abs(std::cos(0.5 * pi * (nu - w))))) / pi;
    } else {
        for (int k = -*pair_count - 1; k <= *pair_count; ++k) {
            const double c = 2 * k + 1;
            r.dispersion -= (std::log(std::abs(nu + w + c)) - std::log(std::abs(nu - w + c))) / pi;
        }
    }
    return r;
}

ResponsePoint epsilon_broadened(double nu, double delta, double nu0, double gamma,
                                std::optional<int> pair_count)
{
    if (!(nu0 > 0.0)) throw DomainError("nu0 must be positive");
    if (!(gamma > 0.0)) throw DomainError("broadened response requires gamma > 0");
    const double x = nu / nu0;
    const double w = delta / nu0;
    const double g = gamma / nu0;
    require_inv_finesse(w);

    if (!pair_count) {
        const double q = -std::exp(-pi * g);
        auto arg = [q](double theta) {
            return std::atan2(q * std::sin(theta), 1.0 - q * std::cos(theta));
        };
        auto logmod = [q](double theta) {
            return std::log(1.0 - 2.0 * q * std::cos(theta) + q * q);
        };
        const double plus = pi * (w + x);
        const double minus = pi * (w - x);
        return {w + (arg(plus) + arg(minus)) / pi, (logmod(minus) - logmod(plus)) / (2.0 * pi)};
    }

    ResponsePoint r;
    for (int k = -*pair_count - 1; k <= *pair_count; ++k) {
        const double c = 2 * k + 1;
        const double hi = x + w + c;
        const double lo = x - w + c;
        r.absorption += (std::atan(hi / g) - std::atan(lo / g)) / pi;
        r.dispersion -= std::log((hi * hi + g * g) / (lo * lo + g * g)) / (2.0 * pi);
    }
    return r;
}

double epsilon_window_center(double delta, double nu0, double gamma,
                             std::optional<int> pair_count)
{
    if (!(nu0 > 0.0)) throw DomainError("nu0 must be positive");
    if (!(gamma >= 0.0)) throw DomainError("gamma must be >= 0");
    const double w = delta / nu0;
    const double g = gamma / nu0;
    require_inv_finesse(w);
    if (!pair_count) return g * std::tan(0.5 * pi * w);
    double sum = 0.0;
    for (int k = 0; k <= *pair_count; ++k) {
        const double c = 2 * k + 1;
        sum += g * w / (c * c - w * w);
    }
    return 4.0 / pi * sum;
}

double epsilon_peak_center(double delta, double nu0, double gamma)
{
    if (!(nu0 > 0.0)) throw DomainError("nu0 must be positive");
    if (!(gamma >= 0.0)) throw DomainError("gamma must be >= 0");
    const double w = delta / nu0;
    const double g = gamma / nu0;
    require_inv_finesse(w);
    return 1.0 - 2.0 / pi * (g / w - 2.0 * g * w / (4.0 - w * w));
}

std::complex<double> lorentzian_convolution(const std::function<double(double)>& population,
                                            double gamma, double nu, double lower,
                                            double upper, std::span<const double> breakpoints,
                                            double abs_tol)
{
    if (!(gamma > 0.0)) throw DomainError("Lorentzian convolution requires gamma > 0");
    if (!(upper > lower)) throw DomainError("convolution window is empty");

    std::vector<double> points{lower, upper};
    auto add = [&](double p) {
        if (p > lower && p < upper) points.push_back(p);
    };
    for (double b : breakpoints) add(b);
    // The kernel peaks at D = -nu with width gamma.
    for (double s : {-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0}) add(-nu + s * gamma);

    auto integrand = [&](double d) -> std::complex<double> {
        const double n = population(d);
        if (n == 0.0) return 0.0;
        const double u = nu + d;
        const double den = pi * (u * u + gamma * gamma);
        return {n * gamma / den, n * u / den};
    };
    return quadrature::integrate<std::complex<double>>(integrand, points, abs_tol).value;
}

std::complex<double> lorentzian_convolution(const CombSpec& comb, double nu, double abs_tol)
{
    comb.validate();
    if (!comb.pair_count)
        throw DomainError("Lorentzian convolution needs a comb with a finite number of peaks");
    const int n = *comb.pair_count;
    const double g = comb.gamma / comb.nu0;
    const double w = comb.relative_width();
    const double x = nu / comb.nu0;

    std::vector<double> breaks;
    double lower = 0.0;
    double upper = 0.0;
    for (int k = -n - 1; k <= n; ++k) {
        const double c = 2 * k + 1;
        breaks.push_back(c);
        if (comb.shape == CombShape::Square) {
            breaks.push_back(c - w);
            breaks.push_back(c + w);
        }
    }
    if (comb.shape == CombShape::Square) {
        lower = -(2.0 * n + 1.0) - w;
        upper = (2.0 * n + 1.0) + w;
    } else {
        upper = (2.0 * n + 2.0) + 20.0 * g;
        lower = -upper;
    }

    CombSpec normalized = comb;
    normalized.nu0 = 1.0;
    normalized.half_width = w;
    auto population = [&normalized](double d) { return population_difference(normalized, d); };
    return lorentzian_convolution(population, g, x, lower, upper, breaks, abs_tol);
}

ResponsePoint comb_response(const CombSpec& comb, ResponseModel model, double nu, int harmonics)
{
    const double x = nu / comb.nu0;
    const double w = comb.relative_width();
    const double g = model == ResponseModel::Broadened ? comb.gamma / comb.nu0 : 0.0;

    switch (comb.shape) {
    case CombShape::Harmonic:
        return harmonic_closed(x, g);

    case CombShape::Lorentzian:
        if (model == ResponseModel::IdealSeries) return lorentzian_series(x, w, harmonics);
        return lorentzian_closed(x, w, g, comb.pair_count);

    case CombShape::Square:
        if (model == ResponseModel::IdealSeries) return chi_square_series(x, w, harmonics);
        if (g > 0.0) return epsilon_broadened(x, w, 1.0, g, comb.pair_count);
        return chi_square_exact(x, w, comb.pair_count);
    }
    return {};
}

ComplexResponse sample_response(const CombSpec& comb, ResponseModel model,
                                std::span<const double> nu_over_nu0, int harmonics)
{
    comb.validate();
    ComplexResponse out;
    out.nu.assign(nu_over_nu0.begin(), nu_over_nu0.end());
    out.absorption.reserve(out.nu.size());
    out.dispersion.reserve(out.nu.size());
    for (double x : out.nu) {
        const auto r = comb_response(comb, model, x * comb.nu0, harmonics);
        out.absorption.push_back(r.absorption);
        out.dispersion.push_back(r.dispersion);
    }
    return out;
}

} // namespace afc
