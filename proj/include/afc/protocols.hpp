#pragma once

// Storage protocols built from one or two passes through an AFC: the plain
// single-pass echo, the two-pass scheme in which the transmitted prompt pulse
// is sent through an identical comb and its echo is added coherently to the
// first echo, and storage of a two-pulse time-bin qubit.

#include "afc/comb.hpp"
#include "afc/propagation.hpp"
#include "afc/susceptibility.hpp"
#include "afc/train.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace afc {

/// Imperfect recombination: the second-pass echo arrives late by `delay`
/// and with an extra `phase`.
struct Mismatch {
    double delay = 0.0;
    double phase = 0.0;
};

struct ProtocolOptions {
    ResponseModel model = ResponseModel::Broadened;
    int harmonics = kDefaultHarmonics;
    /// Defaults to FrequencyGrid::for_pulse(sigma).
    std::optional<FrequencyGrid> grid;
    int k_max = 4;
    int oversample = 4;
    bool simulate = true;
    Mismatch mismatch;
    /// |mismatch| beyond these is rejected unless allow_mismatch is set.
    double delay_tolerance = 1e-9;
    double phase_tolerance = 1e-9;
    bool allow_mismatch = false;
};

struct ProtocolResult {
    TrainMoments moments;
    /// Two-term closed form: prompt and (combined) first-echo amplitude.
    std::complex<double> prompt_out;
    std::complex<double> echo_out;
    double efficiency_closed_form = 0.0;

    /// Full DFT simulation (empty when options.simulate is false).
    std::vector<PulseTrain> echoes;  // one train per pass
    PulseTrain combined;             // field leaving the device (two-pass: echoes summed)
    std::complex<double> simulated_prompt;
    std::complex<double> simulated_echo;
    double combined_echo_intensity = 0.0;
    /// Simulated when available, closed form otherwise.
    double efficiency = 0.0;
    /// Energy ledger of the simulation, normalized to the input energy.
    double output_energy = 0.0;
    std::vector<std::string> warnings;
};

ProtocolResult single_pass(const PulseSpec& input, const CombSpec& comb,
                           const MediumSpec& medium, const ProtocolOptions& options = {});

ProtocolResult two_pass_interfere(const PulseSpec& input, const CombSpec& comb,
                                  const MediumSpec& medium, const ProtocolOptions& options = {});

struct TimeBinQubit {
    std::complex<double> c1 = 1.0;
    std::complex<double> c2 = 0.0;
    double phi = 0.0;    // relative phase carried by the second bin
    double tau = 0.0;    // bin separation, < T
    double sigma = 5.0;  // envelope width of each bin

    /// Normalization, tau < T and sigma tau >= 6, (T - tau) sigma >= 6.
    void validate(double delay) const;
};

struct TimeBinOutput {
    std::complex<double> c1p, c2p;  // prompt bins
    std::complex<double> c1d, c2d;  // delayed bins (amplitudes of c_i e^{i phi_i} envelopes)
    double phi = 0.0;               // relative phase of the delayed pair
    double p1d() const { return std::norm(c1d); }
    double p2d() const { return std::norm(c2d); }
};

/// Closed-form bin amplitudes after one or two passes.
TimeBinOutput timebin_transform(const TimeBinQubit& qubit, const CombSpec& comb,
                                const MediumSpec& medium, int passes,
                                ResponseModel model = ResponseModel::Broadened);

/// Same bookkeeping read off a DFT simulation of the two-pulse input.
TimeBinOutput timebin_simulate(const TimeBinQubit& qubit, const CombSpec& comb,
                               const MediumSpec& medium, int passes,
                               const ProtocolOptions& options = {});

/// Field trace of the two-pulse input after one pass, for plotting.
TimeSignal timebin_trace(const TimeBinQubit& qubit, const CombSpec& comb,
                         const MediumSpec& medium, const ProtocolOptions& options = {});

} // namespace afc
