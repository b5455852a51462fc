#include "afc/train.hpp"

#include "afc/errors.hpp"
#include "afc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace afc {

namespace {

constexpr double pi = std::numbers::pi;

void check_depth(double d_p)
{
    if (!(d_p >= 0.0) || !std::isfinite(d_p)) throw DomainError("optical depth d_p must be >= 0");
}

void check_finesse(double finesse)
{
    if (!(finesse >= 1.0) || !std::isfinite(finesse)) throw DomainError("finesse F must be >= 1");
}

// a_0 = 1, a_n = (1/n) sum_{j=1..n} j b_j a_{n-j}: coefficients of exp(sum b_k z^k).
std::vector<std::complex<double>> exponentiate(const std::vector<std::complex<double>>& b, int k_max)
{
    std::vector<std::complex<double>> a(static_cast<std::size_t>(k_max) + 1);
    a[0] = 1.0;
    for (int n = 1; n <= k_max; ++n) {
        std::complex<double> sum = 0.0;
        for (int j = 1; j <= n; ++j) sum += static_cast<double>(j) * b[j] * a[n - j];
        a[n] = sum / static_cast<double>(n);
    }
    return a;
}

} // namespace

double TrainCoefficients::intensity(int k) const
{
    if (k < 0 || static_cast<std::size_t>(k) >= a.size()) return 0.0;
    return std::norm(a[k]) * prompt_factor * prompt_factor;
}

double prompt_coefficient(CombShape shape, double d_p, double finesse)
{
    check_depth(d_p);
    switch (shape) {
    case CombShape::Harmonic:
        return std::exp(-d_p / 4.0);
    case CombShape::Lorentzian:
        check_finesse(finesse);
        return std::exp(-pi * d_p / (4.0 * finesse));
    case CombShape::Square:
        check_finesse(finesse);
        return std::exp(-d_p / (2.0 * finesse));
    }
    return 0.0;
}

double first_echo_coefficient(CombShape shape, double d_p, double finesse, double gamma_t)
{
    if (!(gamma_t >= 0.0)) throw DomainError("gammaT must be >= 0");
    const double c0 = prompt_coefficient(shape, d_p, finesse);
    double weight = 0.0;
    switch (shape) {
    case CombShape::Harmonic:
        weight = d_p / 4.0;
        break;
    case CombShape::Lorentzian:
        weight = pi * d_p / (2.0 * finesse) * std::exp(-pi / finesse);
        break;
    case CombShape::Square:
        weight = d_p / pi * std::sin(pi / finesse);
        break;
    }
    return c0 * weight * std::exp(-gamma_t);
}

TrainCoefficients series_coefficients_square(double d_p, double finesse, int k_max, double gamma_t)
{
    check_depth(d_p);
    check_finesse(finesse);
    if (k_max < 1) throw DomainError("k_max must be >= 1");
    if (!(gamma_t >= 0.0)) throw DomainError("gammaT must be >= 0");

    std::vector<std::complex<double>> b(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (int k = 1; k <= k_max; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        b[k] = -d_p / (k * pi) * sign * std::sin(k * pi / finesse) * std::exp(-k * gamma_t);
    }
    return {std::exp(-d_p / (2.0 * finesse)), exponentiate(b, k_max), Provenance::ClosedForm};
}

TrainCoefficients coefficients_numeric(const TransferFunction& transfer, int k_max, double abs_tol)
{
    if (k_max < 0) throw DomainError("k_max must be >= 0");
    if (!transfer.evaluate) throw DomainError("transfer function has no evaluator");
    const double nu0 = transfer.nu0;
    const auto n = static_cast<std::size_t>(k_max) + 1;

    auto integrand = [&](double nu) {
        const auto h = transfer.evaluate(nu);
        std::vector<std::complex<double>> v(n);
        const auto step = std::polar(1.0, -pi * nu / nu0);
        auto phase = std::complex<double>(1.0);
        for (std::size_t k = 0; k < n; ++k) {
            v[k] = h * phase;
            phase *= step;
        }
        return v;
    };

    std::vector<double> points{-nu0, nu0};
    points.insert(points.end(), transfer.period_breakpoints.begin(), transfer.period_breakpoints.end());
    // Scaled so that the tolerance applies to the normalized coefficients.
    const auto result = quadrature::integrate<std::vector<std::complex<double>>>(
        integrand, std::span<const double>(points), abs_tol * 2.0 * nu0, 200000);

    TrainCoefficients out;
    out.provenance = Provenance::Quadrature;
    out.a.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.a[k] = result.value[k] / (2.0 * nu0);
    const auto c0 = out.a[0];
    if (std::abs(c0) == 0.0) throw NumericalError("prompt coefficient vanishes", 0.0);
    out.prompt_factor = std::abs(c0);
    for (auto& v : out.a) v /= c0;
    return out;
}

TrainCoefficients harmonic_train(double d_p, int k_max)
{
    check_depth(d_p);
    if (k_max < 0) throw DomainError("k_max must be >= 0");
    TrainCoefficients out;
    out.prompt_factor = std::exp(-d_p / 4.0);
    out.a.resize(static_cast<std::size_t>(k_max) + 1);
    double term = 1.0;
    for (int k = 0; k <= k_max; ++k) {
        out.a[k] = term;
        term *= d_p / (4.0 * (k + 1));
    }
    return out;
}

BroadenedMoments broadened_A_coefficients(double delta, double nu0, double gamma,
                                          std::optional<int> pair_count)
{
    if (!(nu0 > 0.0) || !(delta > 0.0 && delta < nu0))
        throw DomainError("broadened moments: need 0 < delta < nu0");
    if (!(gamma >= 0.0)) throw DomainError("broadened moments: gamma must be >= 0");

    const double w = delta / nu0;
    const double g = gamma / nu0;
    auto response = [&](double x) {
        return g > 0.0 ? epsilon_broadened(x, w, 1.0, g, pair_count)
                       : chi_square_exact(x, w, pair_count);
    };
    // Value layout: {eps'', eps'' e^{-i pi x}, (eps'' - i eps') e^{-i pi x}}.
    auto integrand = [&](double x) {
        const auto r = response(x);
        const auto phase = std::polar(1.0, -pi * x);
        std::vector<std::complex<double>> v(3);
        v[0] = r.absorption;
        v[1] = r.absorption * phase;
        v[2] = r.attenuation() * phase;
        return v;
    };

    std::vector<double> points{-1.0, 1.0, -(1.0 - w), 1.0 - w};
    if (g > 0.0) {
        for (double s : {-1.0, 1.0})
            for (double m : {1.0, 5.0, 20.0}) {
                points.push_back(s * (1.0 - w) + m * g);
                points.push_back(s * (1.0 - w) - m * g);
            }
    }
    points.erase(std::remove_if(points.begin(), points.end(),
                                [](double p) { return p < -1.0 || p > 1.0; }),
                 points.end());
    const auto result = quadrature::integrate<std::vector<std::complex<double>>>(
        integrand, std::span<const double>(points), 1e-10, 200000);

    BroadenedMoments m;
    m.a0 = 0.5 * result.value[0].real();
    m.a1 = -result.value[1];
    m.a1_full = -0.5 * result.value[2];
    m.a1_closed_form = 2.0 * std::sin(pi * w) * std::exp(-pi * g) / pi;
    m.error = result.error;
    return m;
}

TrainMoments train_moments(const CombSpec& comb, ResponseModel model)
{
    comb.validate();
    const double g = model == ResponseModel::Broadened ? comb.gamma / comb.nu0 : 0.0;
    const double w = comb.relative_width();
    switch (comb.shape) {
    case CombShape::Harmonic:
        return {0.5, 0.5 * std::exp(-pi * g)};
    case CombShape::Lorentzian:
        return {0.5 * pi * w, pi * w * std::exp(-pi * (w + g))};
    case CombShape::Square:
        return {w, 2.0 * std::sin(pi * w) * std::exp(-pi * g) / pi};
    }
    return {};
}

TrainCoefficients closed_form_train(const CombSpec& comb, ResponseModel model, double d_p, int k_max)
{
    comb.validate();
    check_depth(d_p);
    if (k_max < 0) throw DomainError("k_max must be >= 0");
    const double g = model == ResponseModel::Broadened ? comb.gamma / comb.nu0 : 0.0;
    const double w = comb.relative_width();

    std::vector<std::complex<double>> b(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (int k = 1; k <= k_max; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double damping = std::exp(-k * pi * g);
        switch (comb.shape) {
        case CombShape::Harmonic:
            if (k == 1) b[k] = d_p / 4.0 * damping;
            break;
        case CombShape::Lorentzian:
            b[k] = -0.5 * d_p * pi * w * sign * std::exp(-k * pi * w) * damping;
            break;
        case CombShape::Square:
            b[k] = -d_p / (k * pi) * sign * std::sin(k * pi * w) * damping;
            break;
        }
    }
    const auto m = train_moments(comb, model);
    return {std::exp(-m.a0 * d_p / 2.0), exponentiate(b, k_max), Provenance::ClosedForm};
}

} // namespace afc
