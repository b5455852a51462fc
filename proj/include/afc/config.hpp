#pragma once

// Run configuration: line-oriented "key = value" text with '#' comments.
// Frequencies are in units of nu0, times in units of T.

#include "afc/comb.hpp"
#include "afc/errors.hpp"
#include "afc/propagation.hpp"
#include "afc/susceptibility.hpp"
#include "afc/sweep.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace afc {

struct RunConfig {
    // comb and medium
    CombShape shape = CombShape::Square;
    double finesse = 5.0;
    double d_p = 10.0;
    double gamma = 0.0;
    std::optional<int> pairs = kDefaultPairCount;  // nullopt: "inf"
    ResponseModel model = ResponseModel::IdealSeries;
    int harmonics = kDefaultHarmonics;

    // pulse and grid
    double sigma = 5.0;
    double center = 0.0;
    double phase = 0.0;
    std::size_t samples = std::size_t{1} << 14;
    double span = 4.0;  // grid half span in units of sigma
    int oversample = 4;
    int k_max = 4;

    // spectrum output range
    double nu_min = -3.0;
    double nu_max = 3.0;
    int nu_steps = 1201;

    // trace output range
    double t_min = -1.0;
    double t_max = 5.0;

    // time-bin qubit
    double tau = 0.5;  // units of T
    double phi = 0.0;
    double c1 = std::sqrt(0.5);  // real amplitudes, |c1|^2 + |c2|^2 = 1
    double c2 = std::sqrt(0.5);
    int passes = 1;

    // sweep
    SweepProtocol protocol = SweepProtocol::FirstEcho;
    Evaluator evaluator = Evaluator::ClosedForm;
    std::string sweep_axis = "d_p";
    double sweep_min = 0.0;
    double sweep_max = 30.0;
    int sweep_steps = 301;
    AxisScale sweep_scale = AxisScale::Linear;

    CombSpec comb() const;
    MediumSpec medium() const { return MediumSpec{d_p}; }
    PulseSpec pulse() const;
    FrequencyGrid grid() const;
    SweepRequest sweep_request() const;

    /// Range checks; messages name the violated condition.
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

/// Thrown for malformed input; what() starts with "line N: ".
struct ConfigError : DomainError {
    ConfigError(int line, const std::string& message);
    int line;
};

RunConfig parse_config(std::string_view text);

/// Applies one "key = value" (or "key=value") assignment on top of config.
void apply_setting(RunConfig& config, std::string_view assignment, int line = 0);

/// Every key with its value, in a fixed order; parse_config(to_text(c)) == c.
std::string to_text(const RunConfig& config);

} // namespace afc
