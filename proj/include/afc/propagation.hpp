#pragma once

// Frequency-domain propagation of slowly varying envelopes through an AFC.
//
// Transform pair: F(nu) = int f(t) exp(i nu t) dt and
// f(t) = (1/2pi) int F(nu) exp(-i nu t) dnu. With this convention a factor
// exp(i k pi nu / nu0) in the spectrum delays the envelope by k T.
// Frequencies share the unit of the comb's nu0; times are in its inverse.

#include "afc/comb.hpp"
#include "afc/susceptibility.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace afc {

struct MediumSpec {
    double optical_depth = 10.0;  // d_p at an absorption-peak centre

    void validate() const;
    bool operator==(const MediumSpec&) const = default;
};

struct FrequencyGrid {
    double half_span = 20.0;
    std::size_t samples = std::size_t{1} << 14;

    double spacing() const { return 2.0 * half_span / static_cast<double>(samples); }
    double frequency(std::size_t j) const { return -half_span + static_cast<double>(j) * spacing(); }
    std::vector<double> frequencies() const;
    /// Period of the reconstructed time signal, 2 pi / spacing.
    double time_window() const;

    /// Spacing must resolve both the pulse spectrum and the comb period:
    /// spacing <= min(sigma, nu0) / 64.
    void validate(double sigma, double nu0) const;

    static FrequencyGrid for_pulse(double sigma, double span_in_sigma = 4.0,
                                   std::size_t samples = std::size_t{1} << 14);

    bool operator==(const FrequencyGrid&) const = default;
};

/// Sampled H(nu) = exp(-(d_p/2) alpha_c(nu)/alpha), plus the closed-form
/// evaluator it was sampled from.
struct TransferFunction {
    FrequencyGrid grid;
    std::vector<std::complex<double>> values;
    std::function<std::complex<double>(double)> evaluate;
    double nu0 = 1.0;
    double optical_depth = 0.0;
    /// Discontinuities of H inside [-nu0, nu0].
    std::vector<double> period_breakpoints;
    /// Ideal square comb: jumps in H leave a 1/t tail of echoes in time.
    bool discontinuous = false;

    double delay() const;
};

TransferFunction build_transfer(const CombSpec& comb, const MediumSpec& medium,
                                const FrequencyGrid& grid, ResponseModel model,
                                int harmonics = kDefaultHarmonics);

TransferFunction identity_transfer(const FrequencyGrid& grid, double nu0 = 1.0);

struct PulseSpec {
    std::complex<double> amplitude = 1.0;
    double sigma = 5.0;   // E(t) = amplitude * exp(i phase) * exp(-sigma^2 (t - center)^2)
    double center = 0.0;
    double phase = 0.0;

    void validate() const;
    std::complex<double> field(double t) const;
    bool operator==(const PulseSpec&) const = default;
};

struct Spectrum {
    FrequencyGrid grid;
    std::vector<std::complex<double>> values;

    Spectrum& operator+=(const Spectrum& other);
    Spectrum& operator*=(std::complex<double> factor);
};

/// Analytic spectrum of a Gaussian pulse sampled on grid.
Spectrum gaussian_spectrum(const PulseSpec& pulse, const FrequencyGrid& grid);

struct TimeSignal {
    double start = 0.0;
    double step = 1.0;
    std::vector<std::complex<double>> samples;
    /// Peak intensity of the incident field on the same grid (I0).
    double reference_intensity = 1.0;
    /// Fraction of the energy found within 10% of the window edges.
    double wrapped_fraction = 0.0;

    double time(std::size_t n) const { return start + static_cast<double>(n) * step; }
    double energy() const;
    /// Index of the sample closest to t.
    std::size_t index_of(double t) const;
};

struct PropagationOptions {
    int oversample = 4;  // zero-padding factor for the time grid
    int k_max = 4;       // the window must hold (k_max + 1) T
    double overflow_tolerance = 1e-8;
    /// Used instead for discontinuous transfers, whose algebraic echo tail
    /// always reaches the window edge.
    double discontinuous_overflow_tolerance = 1e-2;
};

/// Spectrum -> time signal (inverse transform with zero padding).
TimeSignal to_time(const Spectrum& spectrum, int oversample);

/// Time signal -> spectrum on grid; exact inverse of to_time for signals
/// produced on the same grid.
Spectrum to_spectrum(const TimeSignal& signal, const FrequencyGrid& grid);

/// Multiplies by H and transforms back. Throws NumericalError when the time
/// window is too short for k_max delays or energy piles up at its edges.
TimeSignal propagate(const Spectrum& spectrum, const TransferFunction& transfer,
                     const PropagationOptions& options = {});

struct PulseEntry {
    int k = 0;
    std::complex<double> amplitude;  // field value at the located maximum
    double intensity = 0.0;          // |amplitude|^2 / I0
    double arrival = 0.0;            // nominal k T
    double peak_time = 0.0;          // interpolated maximum
};

struct PulseTrain {
    std::vector<PulseEntry> entries;
    std::vector<std::string> warnings;

    double total_intensity() const;
    const PulseEntry* find(int k) const;
};

struct TrainExtraction {
    int k_max = 4;
    double window_fraction = 0.5;  // search kT +- fraction * T
    double origin = 0.0;           // time of the k = 0 pulse
    double min_intensity = 1e-12;  // entries below this are dropped
    double sigma = 0.0;            // when > 0, require sigma T >= 6
};

/// Locates the pulse maxima near origin + k T with three-point quadratic
/// interpolation.
PulseTrain extract_train(const TimeSignal& signal, double delay,
                         const TrainExtraction& options = {});

} // namespace afc
