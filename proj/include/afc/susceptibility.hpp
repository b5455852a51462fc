#pragma once

// Complex response of an AFC medium.
//
// A ResponsePoint stores the absorption (chi'' / chi_M or eps'') and the
// dispersion (chi' / chi_M or eps') at one frequency. The complex
// attenuation coefficient entering the transfer function is
// alpha_c / alpha = absorption - i * dispersion, and the field transfer is
// exp(-(d_p / 2) * alpha_c / alpha).
//
// Functions named after a closed form take frequencies in units of nu0
// unless a physical nu0 argument is present.

#include "afc/comb.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace afc {

enum class ResponseModel {
    IdealSeries,  // truncated Fourier series of the periodic comb, gamma = 0
    IdealExact,   // closed form for 2N+2 peaks, gamma = 0
    Broadened,    // closed form for 2N+2 peaks convolved with a Lorentzian of width gamma
};

std::string_view to_string(ResponseModel model);
ResponseModel parse_model(std::string_view text);

inline constexpr int kDefaultHarmonics = 2000;

struct ResponsePoint {
    double absorption = 0.0;
    double dispersion = 0.0;

    std::complex<double> attenuation() const { return {absorption, -dispersion}; }
};

struct ComplexResponse {
    std::vector<double> nu;  // units of nu0
    std::vector<double> absorption;
    std::vector<double> dispersion;
};

/// Square comb as a Fourier series with `harmonics` terms. nu in units of
/// nu0; 0 < inv_finesse < 1.
ResponsePoint chi_square_series(double nu, double inv_finesse,
                                int harmonics = kDefaultHarmonics);

/// Ideal square comb without series truncation. Absorption is the
/// indicator (1/2 exactly on an edge); dispersion is the logarithmic
/// Kramers-Kronig partner and becomes +-inf on an edge, which callers must
/// treat as a singular sample. pair_count = nullopt gives the periodic comb.
ResponsePoint chi_square_exact(double nu, double inv_finesse,
                               std::optional<int> pair_count);

/// Square comb convolved with the homogeneous Lorentzian (gamma > 0).
/// All frequencies share the unit of nu0.
ResponsePoint epsilon_broadened(double nu, double delta, double nu0,
                                double gamma, std::optional<int> pair_count);

/// eps''(0): residual absorption at a transparency-window centre, as the
/// truncated sum over k = 0..N (or its N -> infinity closed form).
double epsilon_window_center(double delta, double nu0, double gamma,
                             std::optional<int> pair_count);

/// eps''(nu0): absorption at a peak centre, first-order in gamma.
double epsilon_peak_center(double delta, double nu0, double gamma);

/// alpha_av / alpha = (i/pi) * integral n(D) / (nu + D + i gamma) dD, by
/// adaptive quadrature for any comb with finitely many peaks.
std::complex<double> lorentzian_convolution(const CombSpec& comb, double nu,
                                            double abs_tol = 1e-9);

/// Same integral for an arbitrary population profile supported on
/// [lower, upper]; `breakpoints` lists discontinuities and sharp features.
std::complex<double> lorentzian_convolution(const std::function<double(double)>& population,
                                            double gamma, double nu,
                                            double lower, double upper,
                                            std::span<const double> breakpoints,
                                            double abs_tol = 1e-9);

/// Response of any comb under any model; nu shares the unit of comb.nu0.
ResponsePoint comb_response(const CombSpec& comb, ResponseModel model, double nu,
                            int harmonics = kDefaultHarmonics);

/// comb_response sampled on nu_over_nu0.
ComplexResponse sample_response(const CombSpec& comb, ResponseModel model,
                                std::span<const double> nu_over_nu0,
                                int harmonics = kDefaultHarmonics);

// Numerical Kramers-Kronig transform

enum class KramersKronigBoundary {
    Decaying,  // absorption is zero outside the sampled window
    Periodic,  // the window holds an integer number of periods
};

struct KramersKronigOptions {
    KramersKronigBoundary boundary = KramersKronigBoundary::Decaying;
    double tolerance = 1e-3;
};

struct KramersKronigResult {
    std::vector<double> dispersion;
    double truncation_estimate = 0.0;
    bool truncation_warning = false;
};

/// dispersion(nu) = (1/pi) P integral absorption(nu') / (nu' - nu) dnu' on a
/// uniform grid. Decaying boundaries use Maclaurin's odd-point rule;
/// periodic boundaries use the discrete conjugate-function transform.
KramersKronigResult kramers_kronig(std::span<const double> absorption,
                                   std::span<const double> grid,
                                   const KramersKronigOptions& options = {});

} // namespace afc
