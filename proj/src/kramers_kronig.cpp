#include "afc/errors.hpp"
#include "afc/susceptibility.hpp"

#include "fft.hpp"

#include <cmath>
#include <numbers>

namespace afc {

namespace {

constexpr double pi = std::numbers::pi;

double uniform_spacing(std::span<const double> grid)
{
    if (grid.size() < 3) throw DomainError("Kramers-Kronig grid needs at least 3 samples");
    const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    if (!(h > 0.0)) throw DomainError("Kramers-Kronig grid must be increasing");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (std::abs(grid[i] - grid[i - 1] - h) > 1e-6 * h)
            throw DomainError("Kramers-Kronig grid must be uniform");
    }
    return h;
}

std::vector<double> maclaurin(std::span<const double> f)
{
    const auto m = static_cast<std::ptrdiff_t>(f.size());
    std::vector<double> out(f.size(), 0.0);
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::ptrdiff_t j = (i & 1) ? 0 : 1; j < m; j += 2)
            sum += f[j] / static_cast<double>(j - i);
        out[i] = 2.0 / pi * sum;
    }
    return out;
}

std::vector<double> conjugate_periodic(std::span<const double> f)
{
    const auto n = f.size();
    std::vector<std::complex<double>> buf(f.begin(), f.end());
    detail::fft_in_place(buf, detail::FftDirection::Forward);
    const std::complex<double> i(0.0, 1.0);
    buf[0] = 0.0;
    for (std::size_t m = 1; m < n; ++m) {
        if (2 * m < n) buf[m] *= i;
        else if (2 * m > n) buf[m] *= -i;
        else buf[m] = 0.0;
    }
    detail::fft_in_place(buf, detail::FftDirection::Backward);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = buf[j].real() / static_cast<double>(n);
    return out;
}

} // namespace

KramersKronigResult kramers_kronig(std::span<const double> absorption,
                                   std::span<const double> grid,
                                   const KramersKronigOptions& options)
{
    if (absorption.size() != grid.size())
        throw DomainError("absorption and grid sizes differ");
    const double h = uniform_spacing(grid);

    KramersKronigResult result;
    if (options.boundary == KramersKronigBoundary::Periodic) {
        result.dispersion = conjugate_periodic(absorption);
        return result;
    }

    result.dispersion = maclaurin(absorption);
    // Mass missing beyond the window enters through a logarithmic tail.
    const double edge = std::max(std::abs(absorption.front()), std::abs(absorption.back()));
    const double span = grid.back() - grid.front();
    result.truncation_estimate = edge / pi * std::log1p(span / h);
    result.truncation_warning = result.truncation_estimate > options.tolerance;
    return result;
}

} // namespace afc
