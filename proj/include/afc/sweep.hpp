#pragma once

// Grid sweeps of first-echo and two-pass efficiencies over (d_p, F, gamma).

#include "afc/comb.hpp"
#include "afc/propagation.hpp"
#include "afc/susceptibility.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace afc {

enum class SweepProtocol { FirstEcho, TwoPass };
enum class AxisScale { Linear, Log };
enum class Evaluator { ClosedForm, Simulation };

std::string_view to_string(SweepProtocol p);
SweepProtocol parse_protocol(std::string_view text);
std::string_view to_string(AxisScale s);
AxisScale parse_scale(std::string_view text);
std::string_view to_string(Evaluator e);
Evaluator parse_evaluator(std::string_view text);

/// Swept parameter: "d_p", "finesse" or "gamma" (gamma in units of nu0).
struct SweepAxis {
    std::string name = "d_p";
    double min = 0.0;
    double max = 30.0;
    int steps = 31;
    AxisScale scale = AxisScale::Linear;

    std::vector<double> values() const;
    bool operator==(const SweepAxis&) const = default;
};

/// Operating point; swept axes override the corresponding field.
struct OperatingPoint {
    CombShape shape = CombShape::Square;
    double finesse = 5.0;
    double d_p = 10.0;
    double gamma = 0.0;  // units of nu0
    std::optional<int> pair_count = kDefaultPairCount;

    CombSpec comb() const;
    bool operator==(const OperatingPoint&) const = default;
};

struct SweepRequest {
    SweepProtocol protocol = SweepProtocol::FirstEcho;
    std::vector<SweepAxis> axes;
    OperatingPoint fixed;
    ResponseModel model = ResponseModel::Broadened;
    Evaluator evaluator = Evaluator::ClosedForm;
    PulseSpec pulse;  // simulation evaluator only
    /// Brent refinement of the argmax on 1-D sweeps.
    bool refine = true;

    void validate() const;
};

struct SweepRow {
    std::vector<double> values;  // one per axis, in request order
    double efficiency = 0.0;
    double intensities[3] = {0.0, 0.0, 0.0};  // I1..I3 of the single-pass train
    bool ok = true;
    std::string status = "ok";
};

struct SweepResult {
    std::vector<std::string> axis_names;
    std::vector<SweepRow> rows;
    std::optional<std::size_t> argmax;  // best ok row
    /// Refined optimum (1-D sweeps with refine set), else the argmax row.
    std::vector<double> best_values;
    double best_efficiency = 0.0;
};

/// Efficiency of one operating point.
double evaluate_point(const SweepRequest& request, const OperatingPoint& point);

SweepResult sweep(const SweepRequest& request);

struct OptimalRow {
    double inv_finesse = 0.0;
    double optimal_depth = 0.0;  // d_p* = 2F
    double intensity = 0.0;      // I_gl = (2F/pi)^2 sin^2(pi/F) e^-2
};

/// Global maximum of the square-comb first echo for each 1/F in (0, 0.5].
std::vector<OptimalRow> optimal_curve(const std::vector<double>& inv_finesse);

} // namespace afc
