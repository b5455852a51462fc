#include "afc/comb.hpp"

#include "afc/errors.hpp"

#include <cmath>
#include <string>

namespace afc {

std::string_view to_string(CombShape shape)
{
    switch (shape) {
    case CombShape::Harmonic: return "harmonic";
    case CombShape::Lorentzian: return "lorentzian";
    case CombShape::Square: return "square";
    }
    return "unknown";
}

CombShape parse_shape(std::string_view text)
{
    if (text == "harmonic") return CombShape::Harmonic;
    if (text == "lorentzian") return CombShape::Lorentzian;
    if (text == "square") return CombShape::Square;
    throw DomainError("unknown comb shape '" + std::string(text) +
                      "' (expected harmonic, lorentzian or square)");
}

void CombSpec::validate() const
{
    if (!(nu0 > 0.0) || !std::isfinite(nu0))
        throw DomainError("comb: nu0 must be positive");
    if (shape != CombShape::Harmonic &&
        !(half_width > 0.0 && half_width < nu0))
        throw DomainError("comb: half-width must satisfy 0 < width < nu0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw DomainError("comb: gamma must be >= 0");
    if (pair_count && *pair_count < 0)
        throw DomainError("comb: pair count N must be >= 0");
}

CombSpec square_comb(double finesse, double gamma, double nu0,
                     std::optional<int> pair_count)
{
    CombSpec c{CombShape::Square, nu0, nu0 / finesse, pair_count, gamma};
    c.validate();
    return c;
}

CombSpec lorentzian_comb(double finesse, double gamma, double nu0,
                         std::optional<int> pair_count)
{
    CombSpec c{CombShape::Lorentzian, nu0, nu0 / finesse, pair_count, gamma};
    c.validate();
    return c;
}

CombSpec harmonic_comb(double gamma, double nu0)
{
    CombSpec c{CombShape::Harmonic, nu0, nu0 / 2.0, std::nullopt, gamma};
    c.validate();
    return c;
}

namespace {

// Nearest odd integer to x.
double nearest_odd(double x)
{
    return 2.0 * std::floor(x / 2.0) + 1.0;
}

} // namespace

double population_difference(const CombSpec& comb, double delta)
{
    comb.validate();
    const double x = delta / comb.nu0;
    const double w = comb.relative_width();
    constexpr double pi = std::numbers::pi;

    switch (comb.shape) {
    case CombShape::Harmonic:
        return 0.5 * (1.0 - std::cos(pi * x));

    case CombShape::Lorentzian:
        if (!comb.pair_count) {
            return 0.5 * pi * w * std::sinh(pi * w) /
                   (std::cosh(pi * w) + std::cos(pi * x));
        } else {
            const int n = *comb.pair_count;
            double sum = 0.0;
            for (int k = -n - 1; k <= n; ++k) {
                const double u = x + (2 * k + 1);
                sum += w * w / (u * u + w * w);
            }
            return sum;
        }

    case CombShape::Square: {
        const double m = nearest_odd(x);
        if (comb.pair_count && std::abs(m) > 2.0 * *comb.pair_count + 1.0)
            return 0.0;
        return std::abs(x - m) <= w ? 1.0 : 0.0;
    }
    }
    return 0.0;
}

double finesse(const CombSpec& comb)
{
    comb.validate();
    if (comb.shape == CombShape::Harmonic) return 2.0;
    return comb.nu0 / comb.half_width;
}

} // namespace afc
