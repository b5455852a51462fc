#include "afc/propagation.hpp"

#include "afc/errors.hpp"
#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace afc {

namespace {

constexpr double pi = std::numbers::pi;

void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b)
{
    if (a.samples != b.samples || a.half_span != b.half_span)
        throw DomainError("spectrum and transfer function use different frequency grids");
}

} // namespace

void MediumSpec::validate() const
{
    if (!(optical_depth >= 0.0) || !std::isfinite(optical_depth))
        throw DomainError("medium: optical depth d_p must be >= 0");
}

std::vector<double> FrequencyGrid::frequencies() const
{
    std::vector<double> nu(samples);
    for (std::size_t j = 0; j < samples; ++j) nu[j] = frequency(j);
    return nu;
}

double FrequencyGrid::time_window() const
{
    return 2.0 * pi / spacing();
}

void FrequencyGrid::validate(double sigma, double nu0) const
{
    if (!(half_span > 0.0)) throw DomainError("grid: half span must be positive");
    if (samples < 16 || (samples & (samples - 1)) != 0)
        throw DomainError("grid: sample count must be a power of two >= 16");
    const double limit = std::min(sigma, nu0) / 64.0;
    if (spacing() > limit) {
        throw NumericalError("grid: spacing " + std::to_string(spacing()) +
                                 " does not resolve min(sigma, nu0)/64 = " + std::to_string(limit),
                             spacing() - limit);
    }
}

FrequencyGrid FrequencyGrid::for_pulse(double sigma, double span_in_sigma, std::size_t samples)
{
    return FrequencyGrid{span_in_sigma * sigma, samples};
}

double TransferFunction::delay() const
{
    return pi / nu0;
}

TransferFunction build_transfer(const CombSpec& comb, const MediumSpec& medium,
                                const FrequencyGrid& grid, ResponseModel model, int harmonics)
{
    comb.validate();
    medium.validate();
    grid.validate(grid.half_span, comb.nu0);
    if (model == ResponseModel::IdealSeries && harmonics < 1)
        throw DomainError("series truncation order must be >= 1");

    TransferFunction h;
    h.grid = grid;
    h.nu0 = comb.nu0;
    h.optical_depth = medium.optical_depth;
    const double half_depth = 0.5 * medium.optical_depth;
    // Harmonic k is an echo at k T; beyond 90% of the half window it would
    // alias onto the early pulses.
    const int resolvable = static_cast<int>(0.45 * grid.time_window() / comb.delay());
    const int order = std::max(1, std::min(harmonics, resolvable));
    h.evaluate = [comb, model, order, half_depth](double nu) {
        return std::exp(-half_depth * comb_response(comb, model, nu, order).attenuation());
    };
    if (comb.shape == CombShape::Square) {
        const double edge = comb.nu0 - comb.half_width;
        h.period_breakpoints = {-edge, edge};
        h.discontinuous = model != ResponseModel::Broadened || comb.gamma == 0.0;
    }

    h.values.resize(grid.samples);
    for (std::size_t j = 0; j < grid.samples; ++j) {
        const double nu = grid.frequency(j);
        const auto value = h.evaluate(nu);
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            throw NumericalError("transfer: singular sample at nu = " + std::to_string(nu) +
                                 " (grid point on a square-comb edge); shift or refine the grid");
        }
        h.values[j] = value;
    }
    return h;
}

TransferFunction identity_transfer(const FrequencyGrid& grid, double nu0)
{
    TransferFunction h;
    h.grid = grid;
    h.nu0 = nu0;
    h.values.assign(grid.samples, 1.0);
    h.evaluate = [](double) { return std::complex<double>(1.0); };
    return h;
}

void PulseSpec::validate() const
{
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("pulse: sigma must be positive");
    if (!std::isfinite(center) || !std::isfinite(phase)) throw DomainError("pulse: non-finite parameter");
}

std::complex<double> PulseSpec::field(double t) const
{
    const double u = t - center;
    return amplitude * std::polar(std::exp(-sigma * sigma * u * u), phase);
}

Spectrum& Spectrum::operator+=(const Spectrum& other)
{
    require_same_grid(grid, other.grid);
    for (std::size_t j = 0; j < values.size(); ++j) values[j] += other.values[j];
    return *this;
}

Spectrum& Spectrum::operator*=(std::complex<double> factor)
{
    for (auto& v : values) v *= factor;
    return *this;
}

Spectrum gaussian_spectrum(const PulseSpec& pulse, const FrequencyGrid& grid)
{
    pulse.validate();
    if (grid.spacing() > pulse.sigma / 64.0)
        throw DomainError("gaussian spectrum: grid spacing does not resolve sigma/64");
    const double half_window = 0.5 * grid.time_window();
    if (std::abs(pulse.center) + 6.0 / pulse.sigma > half_window)
        throw DomainError("gaussian spectrum: pulse centre aliases outside the time window");

    Spectrum s{grid, std::vector<std::complex<double>>(grid.samples)};
    const auto scale = pulse.amplitude * std::polar(std::sqrt(pi) / pulse.sigma, pulse.phase);
    const double inv4s2 = 1.0 / (4.0 * pulse.sigma * pulse.sigma);
    for (std::size_t j = 0; j < grid.samples; ++j) {
        const double nu = grid.frequency(j);
        s.values[j] = scale * std::polar(std::exp(-nu * nu * inv4s2), nu * pulse.center);
    }
    return s;
}

double TimeSignal::energy() const
{
    double e = 0.0;
    for (const auto& v : samples) e += std::norm(v);
    return e * step;
}

std::size_t TimeSignal::index_of(double t) const
{
    const double n = std::round((t - start) / step);
    if (n <= 0.0) return 0;
    return std::min(static_cast<std::size_t>(n), samples.size() - 1);
}

TimeSignal to_time(const Spectrum& spectrum, int oversample)
{
    if (oversample < 1) throw DomainError("oversample factor must be >= 1");
    const auto& grid = spectrum.grid;
    const std::size_t m = grid.samples;
    const std::size_t p = m * static_cast<std::size_t>(oversample);
    const double dnu = grid.spacing();
    const double dt = 2.0 * pi / (static_cast<double>(p) * dnu);

    std::vector<std::complex<double>> buf(p, 0.0);
    std::copy(spectrum.values.begin(), spectrum.values.end(), buf.begin());
    detail::fft_in_place(buf, detail::FftDirection::Forward);

    TimeSignal out;
    out.step = dt;
    out.start = -static_cast<double>(p / 2) * dt;
    out.samples.resize(p);
    const double scale = dnu / (2.0 * pi);
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t n = (i + p / 2) % p;
        const double t = out.time(i);
        out.samples[i] = scale * std::polar(1.0, grid.half_span * t) * buf[n];
    }
    return out;
}

Spectrum to_spectrum(const TimeSignal& signal, const FrequencyGrid& grid)
{
    const std::size_t p = signal.samples.size();
    const double expected_dt = 2.0 * pi / (static_cast<double>(p) * grid.spacing());
    if (p < grid.samples || std::abs(signal.step - expected_dt) > 1e-9 * expected_dt)
        throw DomainError("time signal is not on the transform grid of this frequency grid");

    std::vector<std::complex<double>> buf(p);
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t n = (i + p / 2) % p;
        const double t = signal.time(i);
        buf[n] = signal.samples[i] * std::polar(1.0, -grid.half_span * t);
    }
    detail::fft_in_place(buf, detail::FftDirection::Backward);

    Spectrum s{grid, std::vector<std::complex<double>>(grid.samples)};
    for (std::size_t j = 0; j < grid.samples; ++j) s.values[j] = signal.step * buf[j];
    return s;
}

namespace {

double peak_intensity(const TimeSignal& s)
{
    double best = 0.0;
    for (const auto& v : s.samples) best = std::max(best, std::norm(v));
    return best;
}

} // namespace

TimeSignal propagate(const Spectrum& spectrum, const TransferFunction& transfer,
                     const PropagationOptions& options)
{
    require_same_grid(spectrum.grid, transfer.grid);
    if (options.k_max < 0) throw DomainError("k_max must be >= 0");

    const double half_window = 0.5 * spectrum.grid.time_window();
    const double needed = (options.k_max + 1) * transfer.delay();
    if (half_window < needed) {
        throw NumericalError("propagate: time window +-" + std::to_string(half_window) +
                                 " cannot hold " + std::to_string(options.k_max + 1) +
                                 " delay periods; increase grid samples",
                             needed - half_window);
    }

    Spectrum filtered = spectrum;
    for (std::size_t j = 0; j < filtered.values.size(); ++j) filtered.values[j] *= transfer.values[j];

    TimeSignal out = to_time(filtered, options.oversample);
    out.reference_intensity = peak_intensity(to_time(spectrum, options.oversample));

    const double total = out.energy();
    if (total > 0.0) {
        double edge = 0.0;
        for (std::size_t i = 0; i < out.samples.size(); ++i) {
            if (std::abs(out.time(i)) > 0.9 * half_window) edge += std::norm(out.samples[i]);
        }
        edge *= out.step;
        out.wrapped_fraction = edge / total;
        const double tolerance = transfer.discontinuous ? options.discontinuous_overflow_tolerance
                                                        : options.overflow_tolerance;
        if (edge > tolerance * total) {
            char fraction[32];
            std::snprintf(fraction, sizeof fraction, "%.3g", edge / total);
            throw NumericalError(std::string("propagate: ") + fraction +
                                     " of the output energy lies at the time window edge; increase samples",
                                 edge / total);
        }
    }
    return out;
}

double PulseTrain::total_intensity() const
{
    double sum = 0.0;
    for (const auto& e : entries) sum += e.intensity;
    return sum;
}

const PulseEntry* PulseTrain::find(int k) const
{
    for (const auto& e : entries)
        if (e.k == k) return &e;
    return nullptr;
}

namespace {

struct LocatedPeak {
    std::complex<double> amplitude;
    double time;
};

// Parabola through the log-intensity of three samples (exact for Gaussian
// envelopes); the phase follows the quadratic Lagrange interpolant.
LocatedPeak locate_peak(const TimeSignal& s, std::size_t i)
{
    if (i == 0 || i + 1 >= s.samples.size()) return {s.samples[i], s.time(i)};
    const auto& a = s.samples[i - 1];
    const auto& b = s.samples[i];
    const auto& c = s.samples[i + 1];
    const double ia = std::norm(a), ib = std::norm(b), ic = std::norm(c);
    if (!(ia > 0.0 && ib > 0.0 && ic > 0.0)) return {b, s.time(i)};

    const double la = std::log(ia), lb = std::log(ib), lc = std::log(ic);
    const double curvature = la - 2.0 * lb + lc;
    if (!(curvature < 0.0)) return {b, s.time(i)};
    const double p = std::clamp(0.5 * (la - lc) / curvature, -0.5, 0.5);
    const double log_peak = lb - 0.25 * (la - lc) * p;

    const std::complex<double> lagrange =
        0.5 * p * (p - 1.0) * a + (1.0 - p * p) * b + 0.5 * p * (p + 1.0) * c;
    const double mag = std::sqrt(std::exp(log_peak));
    const double lm = std::abs(lagrange);
    const auto amplitude = lm > 0.0 ? lagrange * (mag / lm) : b;
    return {amplitude, s.time(i) + p * s.step};
}

} // namespace

PulseTrain extract_train(const TimeSignal& signal, double delay, const TrainExtraction& options)
{
    if (!(delay > 0.0)) throw DomainError("extract_train: delay must be positive");
    if (options.k_max < 0) throw DomainError("extract_train: k_max must be >= 0");
    if (!(options.window_fraction > 0.0 && options.window_fraction <= 0.5))
        throw DomainError("extract_train: window fraction must lie in (0, 0.5]");
    if (options.sigma > 0.0 && options.sigma * delay < 6.0)
        throw DomainError("extract_train: pulses overlap (sigma T < 6)");
    if (signal.samples.empty()) throw DomainError("extract_train: empty signal");

    const double i0 = signal.reference_intensity > 0.0 ? signal.reference_intensity : 1.0;
    PulseTrain train;
    std::vector<std::size_t> peak_index;
    for (int k = 0; k <= options.k_max; ++k) {
        const double centre = options.origin + k * delay;
        const double half = options.window_fraction * delay;
        const std::size_t lo = signal.index_of(centre - half);
        const std::size_t hi = signal.index_of(centre + half);
        std::size_t best = lo;
        for (std::size_t i = lo; i <= hi; ++i)
            if (std::norm(signal.samples[i]) > std::norm(signal.samples[best])) best = i;

        const auto peak = locate_peak(signal, best);
        const double intensity = std::norm(peak.amplitude) / i0;
        if (intensity < options.min_intensity) continue;
        train.entries.push_back({k, peak.amplitude, intensity, centre, peak.time});
        peak_index.push_back(best);
    }

    for (std::size_t e = 0; e + 1 < train.entries.size(); ++e) {
        const auto& left = train.entries[e];
        const auto& right = train.entries[e + 1];
        if (right.k != left.k + 1) continue;
        const double smaller = std::min(left.intensity, right.intensity);
        if (smaller < 1e-6) continue;
        double floor = std::numeric_limits<double>::infinity();
        for (std::size_t i = peak_index[e]; i <= peak_index[e + 1]; ++i)
            floor = std::min(floor, std::norm(signal.samples[i]) / i0);
        if (floor > 0.01 * smaller) {
            train.warnings.push_back("pulses k=" + std::to_string(left.k) + " and k=" +
                                     std::to_string(right.k) + " overlap: minimum between them is " +
                                     std::to_string(floor / smaller) + " of the smaller peak");
        }
    }
    return train;
}

} // namespace afc
