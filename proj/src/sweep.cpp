#include "afc/sweep.hpp"

#include "afc/errors.hpp"
#include "afc/protocols.hpp"
#include "afc/train.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <numbers>

namespace afc {

namespace {

constexpr double pi = std::numbers::pi;

void set_axis(OperatingPoint& p, const std::string& name, double v)
{
    if (name == "d_p")
        p.d_p = v;
    else if (name == "finesse")
        p.finesse = v;
    else if (name == "gamma")
        p.gamma = v;
    else
        throw DomainError("sweep: unknown axis '" + name + "' (expected d_p, finesse or gamma)");
}

OperatingPoint point_for(const SweepRequest& req, const std::vector<double>& values)
{
    OperatingPoint p = req.fixed;
    for (std::size_t a = 0; a < req.axes.size(); ++a) set_axis(p, req.axes[a].name, values[a]);
    return p;
}

} // namespace

std::string_view to_string(SweepProtocol p)
{
    return p == SweepProtocol::FirstEcho ? "first_echo" : "two_pass";
}

SweepProtocol parse_protocol(std::string_view text)
{
    if (text == "first_echo" || text == "first-echo") return SweepProtocol::FirstEcho;
    if (text == "two_pass" || text == "two-pass") return SweepProtocol::TwoPass;
    throw DomainError("unknown protocol '" + std::string(text) + "' (expected first_echo or two_pass)");
}

std::string_view to_string(AxisScale s)
{
    return s == AxisScale::Linear ? "linear" : "log";
}

AxisScale parse_scale(std::string_view text)
{
    if (text == "linear") return AxisScale::Linear;
    if (text == "log") return AxisScale::Log;
    throw DomainError("unknown axis scale '" + std::string(text) + "' (expected linear or log)");
}

std::string_view to_string(Evaluator e)
{
    return e == Evaluator::ClosedForm ? "closed_form" : "simulation";
}

Evaluator parse_evaluator(std::string_view text)
{
    if (text == "closed_form" || text == "closed-form") return Evaluator::ClosedForm;
    if (text == "simulation") return Evaluator::Simulation;
    throw DomainError("unknown evaluator '" + std::string(text) + "' (expected closed_form or simulation)");
}

std::vector<double> SweepAxis::values() const
{
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double f = static_cast<double>(i) / (steps - 1);
        v[i] = scale == AxisScale::Linear ? min + f * (max - min)
                                          : std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
    }
    v.back() = max;
    return v;
}

CombSpec OperatingPoint::comb() const
{
    switch (shape) {
    case CombShape::Harmonic:
        return harmonic_comb(gamma);
    case CombShape::Lorentzian:
        return lorentzian_comb(finesse, gamma, 1.0, pair_count);
    case CombShape::Square:
        return square_comb(finesse, gamma, 1.0, pair_count);
    }
    return {};
}

void SweepRequest::validate() const
{
    if (axes.empty()) throw DomainError("sweep: at least one axis is required");
    for (const auto& a : axes) {
        if (a.steps < 2) throw DomainError("sweep: axis '" + a.name + "' needs steps >= 2");
        if (!(a.max > a.min)) throw DomainError("sweep: axis '" + a.name + "' needs max > min");
        if (a.scale == AxisScale::Log && !(a.min > 0.0))
            throw DomainError("sweep: log axis '" + a.name + "' needs min > 0");
        OperatingPoint probe = fixed;
        set_axis(probe, a.name, a.min);
    }
}

double evaluate_point(const SweepRequest& request, const OperatingPoint& point)
{
    const CombSpec comb = point.comb();
    const MediumSpec medium{point.d_p};
    ProtocolOptions options;
    options.model = request.model;
    options.simulate = request.evaluator == Evaluator::Simulation;
    const auto r = request.protocol == SweepProtocol::FirstEcho
                       ? single_pass(request.pulse, comb, medium, options)
                       : two_pass_interfere(request.pulse, comb, medium, options);
    return r.efficiency;
}

SweepResult sweep(const SweepRequest& request)
{
    request.validate();
    SweepResult result;
    std::vector<std::vector<double>> axis_values;
    std::size_t total = 1;
    for (const auto& a : request.axes) {
        result.axis_names.push_back(a.name);
        axis_values.push_back(a.values());
        total *= axis_values.back().size();
    }

    // Last axis varies fastest.
    for (std::size_t flat = 0; flat < total; ++flat) {
        SweepRow row;
        row.values.resize(request.axes.size());
        std::size_t rem = flat;
        for (std::size_t a = request.axes.size(); a-- > 0;) {
            const auto& vals = axis_values[a];
            row.values[a] = vals[rem % vals.size()];
            rem /= vals.size();
        }
        try {
            const OperatingPoint p = point_for(request, row.values);
            row.efficiency = evaluate_point(request, p);
            // the two-pass form adds both echoes without recombination loss
            if (row.efficiency > 1.0) row.status = "ok: above unity";
            if (request.protocol == SweepProtocol::FirstEcho) {
                const auto train = closed_form_train(p.comb(), request.model, p.d_p, 3);
                for (int k = 1; k <= 3; ++k) row.intensities[k - 1] = train.intensity(k);
            }
        } catch (const std::exception& e) {
            row.ok = false;
            row.status = std::string("error: ") + e.what();
            row.efficiency = std::nan("");
        }
        result.rows.push_back(std::move(row));
    }

    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        if (!result.rows[i].ok) continue;
        if (!result.argmax || result.rows[i].efficiency > result.rows[*result.argmax].efficiency)
            result.argmax = i;
    }
    if (!result.argmax) return result;

    const auto& best = result.rows[*result.argmax];
    result.best_values = best.values;
    result.best_efficiency = best.efficiency;
    if (!request.refine || request.axes.size() != 1) return result;

    // Brent search on the bracket around the grid maximum.
    const auto& vals = axis_values[0];
    const std::size_t i = *result.argmax;
    const double lo = vals[i == 0 ? 0 : i - 1];
    const double hi = vals[std::min(i + 1, vals.size() - 1)];
    const bool log_axis = request.axes[0].scale == AxisScale::Log;
    auto objective = [&](double u) {
        const double v = log_axis ? std::exp(u) : u;
        try {
            return -evaluate_point(request, point_for(request, {v}));
        } catch (const std::exception&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    const double a = log_axis ? std::log(lo) : lo;
    const double b = log_axis ? std::log(hi) : hi;
    std::uintmax_t iterations = 200;
    const auto [u, f] = boost::math::tools::brent_find_minima(objective, a, b, 40, iterations);
    if (-f >= best.efficiency) {
        result.best_values = {log_axis ? std::exp(u) : u};
        result.best_efficiency = -f;
    }
    return result;
}

std::vector<OptimalRow> optimal_curve(const std::vector<double>& inv_finesse)
{
    std::vector<OptimalRow> rows;
    rows.reserve(inv_finesse.size());
    for (double x : inv_finesse) {
        if (!(x > 0.0 && x <= 0.5)) throw DomainError("optimal curve: 1/F must lie in (0, 0.5]");
        const double f = 1.0 / x;
        const double s = std::sin(pi * x);
        rows.push_back({x, 2.0 * f, std::pow(2.0 * f / pi * s, 2) * std::exp(-2.0)});
    }
    return rows;
}

} // namespace afc
