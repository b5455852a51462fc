#pragma once

// CSV emission. Numbers use the shortest decimal that round-trips, '.' as
// separator and '\n' line ends, independent of the locale.

#include "afc/propagation.hpp"
#include "afc/protocols.hpp"
#include "afc/susceptibility.hpp"
#include "afc/sweep.hpp"
#include "afc/train.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace afc::csv {

std::string format(double value);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> comments;  // emitted after the rows as "# ..."

    void add_row(const std::vector<double>& values);
    std::string str() const;
};

void write(const std::filesystem::path& path, const Table& table);

/// Output-only unit conversion: with nu0_mhz set, frequencies are written in
/// MHz and times in microseconds (nu0 read as an angular frequency in
/// 10^6 rad/s, so T = pi/nu0 us).
struct Units {
    std::optional<double> nu0_mhz;
};

Table spectrum(const ComplexResponse& response, const Units& units = {});

/// Samples with t in [t_min, t_max] (units of T).
Table trace(const TimeSignal& signal, double delay, double t_min, double t_max,
            const Units& units = {});

Table transfer(const TransferFunction& h, const Units& units = {});

Table train(const PulseTrain& train);

/// k, prompt_factor * Re a_k.
Table coefficients(const TrainCoefficients& coefficients);

struct DepthRow {
    double d_p;
    double i1, i2, i3;
};
Table depth_scan(const std::vector<DepthRow>& rows);

struct ProtocolRow {
    std::string protocol;
    double finesse;
    double d_p;
    double gamma_over_nu0;
    double efficiency_closed_form;
    std::optional<double> efficiency_simulated;
};
Table protocol(const std::vector<ProtocolRow>& rows);

Table sweep(const SweepResult& result);

Table optimal(const std::vector<OptimalRow>& rows);

} // namespace afc::csv
