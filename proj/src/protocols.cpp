#include "afc/protocols.hpp"

#include "afc/errors.hpp"

#include <cmath>
#include <numbers>

namespace afc {

namespace {

constexpr double pi = std::numbers::pi;

struct Setup {
    FrequencyGrid grid;
    TransferFunction transfer;
    PropagationOptions propagation;
};

Setup make_setup(double sigma, const CombSpec& comb, const MediumSpec& medium,
                 const ProtocolOptions& options)
{
    Setup s;
    s.grid = options.grid.value_or(FrequencyGrid::for_pulse(sigma));
    s.grid.validate(sigma, comb.nu0);
    s.transfer = build_transfer(comb, medium, s.grid, options.model, options.harmonics);
    s.propagation.oversample = options.oversample;
    s.propagation.k_max = options.k_max;
    return s;
}

TrainExtraction extraction(const ProtocolOptions& options, double origin, double sigma)
{
    TrainExtraction e;
    e.k_max = options.k_max;
    e.origin = origin;
    e.sigma = sigma;
    return e;
}

double input_energy(const Spectrum& spectrum, int oversample)
{
    return to_time(spectrum, oversample).energy();
}

void check_alignment(const ProtocolOptions& options)
{
    if (options.allow_mismatch) return;
    if (std::abs(options.mismatch.delay) > options.delay_tolerance ||
        std::abs(options.mismatch.phase) > options.phase_tolerance) {
        throw DomainError("two-pass: echoes are misaligned (delay " +
                          std::to_string(options.mismatch.delay) + ", phase " +
                          std::to_string(options.mismatch.phase) +
                          "); set allow_mismatch for sensitivity studies");
    }
}

// Keeps samples with |t - centre| <= half; everything else is routed away.
TimeSignal gate(const TimeSignal& signal, double centre, double half)
{
    TimeSignal out = signal;
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        if (std::abs(out.time(i) - centre) > half) out.samples[i] = 0.0;
    return out;
}

TimeSignal subtract(TimeSignal a, const TimeSignal& b)
{
    for (std::size_t i = 0; i < a.samples.size(); ++i) a.samples[i] -= b.samples[i];
    return a;
}

TimeSignal add(TimeSignal a, const TimeSignal& b)
{
    for (std::size_t i = 0; i < a.samples.size(); ++i) a.samples[i] += b.samples[i];
    return a;
}

// Second pass: the gated prompt goes through the same medium, optionally
// delayed and phase shifted before recombination.
TimeSignal second_pass(const TimeSignal& prompt, const Setup& setup, const Mismatch& mismatch)
{
    Spectrum spectrum = to_spectrum(prompt, setup.grid);
    for (std::size_t j = 0; j < spectrum.values.size(); ++j) {
        const double nu = setup.grid.frequency(j);
        spectrum.values[j] *= std::polar(1.0, mismatch.phase + nu * mismatch.delay);
    }
    TimeSignal out = propagate(spectrum, setup.transfer, setup.propagation);
    out.reference_intensity = prompt.reference_intensity;
    return out;
}

std::complex<double> entry_amplitude(const PulseTrain& train, int k)
{
    const auto* e = train.find(k);
    return e ? e->amplitude : std::complex<double>(0.0);
}

double entry_intensity(const PulseTrain& train, int k)
{
    const auto* e = train.find(k);
    return e ? e->intensity : 0.0;
}

void append(std::vector<std::string>& to, const std::vector<std::string>& from)
{
    to.insert(to.end(), from.begin(), from.end());
}

} // namespace

ProtocolResult single_pass(const PulseSpec& input, const CombSpec& comb, const MediumSpec& medium,
                           const ProtocolOptions& options)
{
    input.validate();
    comb.validate();
    medium.validate();
    const double d = medium.optical_depth;

    ProtocolResult r;
    r.moments = train_moments(comb, options.model);
    const auto e0 = input.amplitude * std::polar(1.0, input.phase);
    const double i0 = std::norm(input.amplitude);
    r.prompt_out = e0 * std::exp(-r.moments.a0 * d / 2.0);
    r.echo_out = r.prompt_out * (r.moments.a1 * d / 2.0);
    r.efficiency_closed_form = i0 > 0.0 ? std::norm(r.echo_out) / i0 : 0.0;
    r.efficiency = r.efficiency_closed_form;
    if (!options.simulate) return r;

    const Setup setup = make_setup(input.sigma, comb, medium, options);
    const Spectrum spectrum = gaussian_spectrum(input, setup.grid);
    const TimeSignal out = propagate(spectrum, setup.transfer, setup.propagation);
    PulseTrain train = extract_train(out, comb.delay(), extraction(options, input.center, input.sigma));

    r.simulated_prompt = entry_amplitude(train, 0);
    r.simulated_echo = entry_amplitude(train, 1);
    r.combined_echo_intensity = entry_intensity(train, 1);
    r.efficiency = r.combined_echo_intensity;
    const double e_in = input_energy(spectrum, options.oversample);
    r.output_energy = e_in > 0.0 ? out.energy() / e_in : 0.0;
    append(r.warnings, train.warnings);
    r.combined = train;
    r.echoes.push_back(std::move(train));
    return r;
}

ProtocolResult two_pass_interfere(const PulseSpec& input, const CombSpec& comb,
                                  const MediumSpec& medium, const ProtocolOptions& options)
{
    input.validate();
    comb.validate();
    medium.validate();
    check_alignment(options);
    const double d = medium.optical_depth;

    ProtocolResult r;
    r.moments = train_moments(comb, options.model);
    const auto e0 = input.amplitude * std::polar(1.0, input.phase);
    const double i0 = std::norm(input.amplitude);
    const double half = std::exp(-r.moments.a0 * d / 2.0);
    const double gain = r.moments.a1 * d / 2.0;
    r.prompt_out = e0 * half * half;
    r.echo_out = e0 * gain * (half + half * half * std::polar(1.0, options.mismatch.phase));
    r.efficiency_closed_form = i0 > 0.0 ? std::norm(r.echo_out) / i0 : 0.0;
    r.efficiency = r.efficiency_closed_form;
    if (!options.simulate) return r;

    const Setup setup = make_setup(input.sigma, comb, medium, options);
    const double t = comb.delay();
    const Spectrum spectrum = gaussian_spectrum(input, setup.grid);
    const TimeSignal first = propagate(spectrum, setup.transfer, setup.propagation);
    const TimeSignal prompt = gate(first, input.center, 0.5 * t);
    const TimeSignal second = second_pass(prompt, setup, options.mismatch);
    const TimeSignal leaving = add(subtract(first, prompt), second);

    const auto ex = extraction(options, input.center, input.sigma);
    PulseTrain train1 = extract_train(first, t, ex);
    PulseTrain train2 = extract_train(second, t, ex);
    PulseTrain combined = extract_train(leaving, t, ex);

    r.simulated_prompt = entry_amplitude(combined, 0);
    r.simulated_echo = entry_amplitude(combined, 1);
    r.combined_echo_intensity = entry_intensity(combined, 1);
    r.efficiency = r.combined_echo_intensity;
    const double e_in = input_energy(spectrum, options.oversample);
    r.output_energy = e_in > 0.0 ? leaving.energy() / e_in : 0.0;
    append(r.warnings, train1.warnings);
    append(r.warnings, train2.warnings);
    append(r.warnings, combined.warnings);
    r.echoes.push_back(std::move(train1));
    r.echoes.push_back(std::move(train2));
    r.combined = std::move(combined);
    return r;
}

void TimeBinQubit::validate(double delay) const
{
    const double norm = std::norm(c1) + std::norm(c2);
    if (std::abs(norm - 1.0) > 1e-9) throw DomainError("time-bin qubit: |c1|^2 + |c2|^2 must be 1");
    if (!(sigma > 0.0)) throw DomainError("time-bin qubit: sigma must be positive");
    if (!(tau > 0.0 && tau < delay)) throw DomainError("time-bin qubit: need 0 < tau < T");
    if (sigma * tau < 6.0) throw DomainError("time-bin qubit: bins overlap (sigma tau < 6)");
    if (sigma * (delay - tau) < 6.0)
        throw DomainError("time-bin qubit: delayed bins overlap the prompt bins (sigma (T - tau) < 6)");
    if (!std::isfinite(phi)) throw DomainError("time-bin qubit: phase must be finite");
}

TimeBinOutput timebin_transform(const TimeBinQubit& qubit, const CombSpec& comb,
                                const MediumSpec& medium, int passes, ResponseModel model)
{
    comb.validate();
    medium.validate();
    qubit.validate(comb.delay());
    if (passes != 1 && passes != 2) throw DomainError("time-bin transform: passes must be 1 or 2");

    const auto m = train_moments(comb, model);
    const double d = medium.optical_depth;
    const double half = std::exp(-m.a0 * d / 2.0);
    const double gain = m.a1 * d / 2.0;

    TimeBinOutput out;
    out.phi = qubit.phi;
    if (passes == 1) {
        out.c1p = qubit.c1 * half;
        out.c2p = qubit.c2 * half;
        out.c1d = out.c1p * gain;
        out.c2d = out.c2p * gain;
    } else {
        out.c1p = qubit.c1 * half * half;
        out.c2p = qubit.c2 * half * half;
        out.c1d = qubit.c1 * half * (1.0 + half) * gain;
        out.c2d = qubit.c2 * half * (1.0 + half) * gain;
    }
    return out;
}

namespace {

Spectrum qubit_spectrum(const TimeBinQubit& q, const FrequencyGrid& grid)
{
    Spectrum s = gaussian_spectrum(PulseSpec{q.c1, q.sigma, -0.5 * q.tau, 0.0}, grid);
    s += gaussian_spectrum(PulseSpec{q.c2, q.sigma, 0.5 * q.tau, q.phi}, grid);
    return s;
}

std::complex<double> bin_amplitude(const TimeSignal& s, double delay, double origin, int k,
                                   double window_fraction)
{
    TrainExtraction e;
    e.k_max = k;
    e.origin = origin;
    e.window_fraction = window_fraction;
    e.min_intensity = 0.0;
    const auto train = extract_train(s, delay, e);
    return entry_amplitude(train, k);
}

} // namespace

TimeSignal timebin_trace(const TimeBinQubit& qubit, const CombSpec& comb, const MediumSpec& medium,
                         const ProtocolOptions& options)
{
    comb.validate();
    medium.validate();
    qubit.validate(comb.delay());
    const Setup setup = make_setup(qubit.sigma, comb, medium, options);
    return propagate(qubit_spectrum(qubit, setup.grid), setup.transfer, setup.propagation);
}

TimeBinOutput timebin_simulate(const TimeBinQubit& qubit, const CombSpec& comb,
                               const MediumSpec& medium, int passes, const ProtocolOptions& options)
{
    comb.validate();
    medium.validate();
    qubit.validate(comb.delay());
    if (passes != 1 && passes != 2) throw DomainError("time-bin transform: passes must be 1 or 2");
    check_alignment(options);

    const Setup setup = make_setup(qubit.sigma, comb, medium, options);
    const double t = comb.delay();
    const double fraction = 0.5 * std::min(qubit.tau, t - qubit.tau) / t;

    // Peak field of a unit pulse as represented on this grid.
    const TimeSignal unit = to_time(gaussian_spectrum(PulseSpec{1.0, qubit.sigma}, setup.grid),
                                    options.oversample);
    const double reference = std::abs(extract_train(unit, t, TrainExtraction{0}).entries.at(0).amplitude);

    const TimeSignal first = propagate(qubit_spectrum(qubit, setup.grid), setup.transfer, setup.propagation);
    TimeSignal leaving = first;
    if (passes == 2) {
        const TimeSignal prompt = gate(first, 0.0, 0.5 * t);
        leaving = add(subtract(first, prompt), second_pass(prompt, setup, options.mismatch));
    }

    const double lo = -0.5 * qubit.tau;
    const double hi = 0.5 * qubit.tau;
    const auto raw1p = bin_amplitude(leaving, t, lo, 0, fraction);
    const auto raw2p = bin_amplitude(leaving, t, hi, 0, fraction);
    const auto raw1d = bin_amplitude(leaving, t, lo, 1, fraction);
    const auto raw2d = bin_amplitude(leaving, t, hi, 1, fraction);

    TimeBinOutput out;
    out.phi = qubit.phi;
    if (std::abs(qubit.c1) > 0.0 && std::abs(qubit.c2) > 0.0 && std::abs(raw1d) > 0.0 &&
        std::abs(raw2d) > 0.0) {
        const double measured = std::arg(raw2d / raw1d) - std::arg(qubit.c2 / qubit.c1);
        out.phi = qubit.phi + std::remainder(measured - qubit.phi, 2.0 * pi);
    }
    const auto unphase = std::polar(1.0, -out.phi);
    out.c1p = raw1p / reference;
    out.c2p = raw2p / reference * unphase;
    out.c1d = raw1d / reference;
    out.c2d = raw2d / reference * unphase;
    return out;
}

} // namespace afc
