#include "afc/config.hpp"

#include "afc/csv.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <vector>

namespace afc {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view v)
{
    double x = 0.0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || end != v.data() + v.size() || !std::isfinite(x))
        throw DomainError("expected a finite number, got '" + std::string(v) + "'");
    return x;
}

long long parse_integer(std::string_view v)
{
    long long x = 0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || end != v.data() + v.size())
        throw DomainError("expected an integer, got '" + std::string(v) + "'");
    return x;
}

int parse_int(std::string_view v)
{
    const long long x = parse_integer(v);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw DomainError("integer out of range: '" + std::string(v) + "'");
    return static_cast<int>(x);
}

struct Key {
    std::string_view name;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Key real_key(std::string_view name, T RunConfig::*field)
{
    return {name, [field](RunConfig& c, std::string_view v) { c.*field = parse_double(v); },
            [field](const RunConfig& c) { return csv::format(c.*field); }};
}

Key int_key(std::string_view name, int RunConfig::*field)
{
    return {name, [field](RunConfig& c, std::string_view v) { c.*field = parse_int(v); },
            [field](const RunConfig& c) { return std::to_string(c.*field); }};
}

const std::vector<Key>& keys()
{
    static const std::vector<Key> table = {
        {"shape", [](RunConfig& c, std::string_view v) { c.shape = parse_shape(v); },
         [](const RunConfig& c) { return std::string(to_string(c.shape)); }},
        real_key("finesse", &RunConfig::finesse),
        real_key("d_p", &RunConfig::d_p),
        real_key("gamma", &RunConfig::gamma),
        {"pairs",
         [](RunConfig& c, std::string_view v) {
             if (v == "inf")
                 c.pairs = std::nullopt;
             else
                 c.pairs = parse_int(v);
         },
         [](const RunConfig& c) { return c.pairs ? std::to_string(*c.pairs) : std::string("inf"); }},
        {"model", [](RunConfig& c, std::string_view v) { c.model = parse_model(v); },
         [](const RunConfig& c) { return std::string(to_string(c.model)); }},
        int_key("harmonics", &RunConfig::harmonics),
        real_key("sigma", &RunConfig::sigma),
        real_key("center", &RunConfig::center),
        real_key("phase", &RunConfig::phase),
        {"samples",
         [](RunConfig& c, std::string_view v) {
             const long long n = parse_integer(v);
             if (n < 0) throw DomainError("samples must be positive");
             c.samples = static_cast<std::size_t>(n);
         },
         [](const RunConfig& c) { return std::to_string(c.samples); }},
        real_key("span", &RunConfig::span),
        int_key("oversample", &RunConfig::oversample),
        int_key("k_max", &RunConfig::k_max),
        real_key("nu_min", &RunConfig::nu_min),
        real_key("nu_max", &RunConfig::nu_max),
        int_key("nu_steps", &RunConfig::nu_steps),
        real_key("t_min", &RunConfig::t_min),
        real_key("t_max", &RunConfig::t_max),
        real_key("tau", &RunConfig::tau),
        real_key("phi", &RunConfig::phi),
        real_key("c1", &RunConfig::c1),
        real_key("c2", &RunConfig::c2),
        int_key("passes", &RunConfig::passes),
        {"protocol", [](RunConfig& c, std::string_view v) { c.protocol = parse_protocol(v); },
         [](const RunConfig& c) { return std::string(to_string(c.protocol)); }},
        {"evaluator", [](RunConfig& c, std::string_view v) { c.evaluator = parse_evaluator(v); },
         [](const RunConfig& c) { return std::string(to_string(c.evaluator)); }},
        {"sweep_axis", [](RunConfig& c, std::string_view v) { c.sweep_axis = std::string(v); },
         [](const RunConfig& c) { return c.sweep_axis; }},
        real_key("sweep_min", &RunConfig::sweep_min),
        real_key("sweep_max", &RunConfig::sweep_max),
        int_key("sweep_steps", &RunConfig::sweep_steps),
        {"sweep_scale", [](RunConfig& c, std::string_view v) { c.sweep_scale = parse_scale(v); },
         [](const RunConfig& c) { return std::string(to_string(c.sweep_scale)); }},
    };
    return table;
}

std::string prefix(int line)
{
    return line > 0 ? "line " + std::to_string(line) + ": " : std::string();
}

} // namespace

ConfigError::ConfigError(int line_number, const std::string& message)
    : DomainError(prefix(line_number) + message), line(line_number)
{
}

CombSpec RunConfig::comb() const
{
    switch (shape) {
    case CombShape::Harmonic:
        return harmonic_comb(gamma);
    case CombShape::Lorentzian:
        return lorentzian_comb(finesse, gamma, 1.0, pairs);
    case CombShape::Square:
        return square_comb(finesse, gamma, 1.0, pairs);
    }
    return {};
}

PulseSpec RunConfig::pulse() const
{
    return PulseSpec{1.0, sigma, center, phase};
}

FrequencyGrid RunConfig::grid() const
{
    return FrequencyGrid::for_pulse(sigma, span, samples);
}

SweepRequest RunConfig::sweep_request() const
{
    SweepRequest r;
    r.protocol = protocol;
    r.evaluator = evaluator;
    r.model = model;
    r.fixed = OperatingPoint{shape, finesse, d_p, gamma, pairs};
    r.axes = {SweepAxis{sweep_axis, sweep_min, sweep_max, sweep_steps, sweep_scale}};
    r.pulse = pulse();
    return r;
}

void RunConfig::validate() const
{
    if (!(finesse >= 1.0)) throw DomainError("finesse: F >= 1 required, got " + csv::format(finesse));
    if (shape != CombShape::Harmonic && !(finesse > 1.0))
        throw DomainError("finesse: F > 1 required for square and Lorentzian combs (peak width below nu0)");
    if (!(d_p >= 0.0)) throw DomainError("d_p: d_p >= 0 required, got " + csv::format(d_p));
    if (!(gamma >= 0.0)) throw DomainError("gamma: gamma >= 0 required, got " + csv::format(gamma));
    if (pairs && *pairs < 0) throw DomainError("pairs: N >= 0 required");
    if (harmonics < 1) throw DomainError("harmonics: K >= 1 required");
    if (!(sigma > 0.0)) throw DomainError("sigma: sigma > 0 required");
    if (samples < 16 || (samples & (samples - 1)) != 0)
        throw DomainError("samples: power of two >= 16 required");
    if (!(span > 0.0)) throw DomainError("span: span > 0 required");
    if (oversample < 1) throw DomainError("oversample: >= 1 required");
    if (k_max < 0) throw DomainError("k_max: k_max >= 0 required");
    if (!(nu_max > nu_min) || nu_steps < 2) throw DomainError("nu range: nu_max > nu_min and nu_steps >= 2 required");
    if (!(t_max > t_min)) throw DomainError("t range: t_max > t_min required");
    if (!(tau > 0.0 && tau < 1.0)) throw DomainError("tau: 0 < tau < 1 (units of T) required");
    if (std::abs(c1 * c1 + c2 * c2 - 1.0) > 1e-9) throw DomainError("c1, c2: c1^2 + c2^2 = 1 required");
    if (passes != 1 && passes != 2) throw DomainError("passes: 1 or 2 required");
    sweep_request().validate();
}

void apply_setting(RunConfig& config, std::string_view assignment, int line)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line, "expected 'key = value'");
    const auto key = trim(assignment.substr(0, eq));
    const auto value = trim(assignment.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "missing key");
    if (value.empty()) throw ConfigError(line, "missing value for '" + std::string(key) + "'");

    const auto& table = keys();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return k.name == key; });
    if (it == table.end()) throw ConfigError(line, "unknown key '" + std::string(key) + "'");
    try {
        it->set(config, value);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(line, std::string(key) + ": " + e.what());
    }
}

RunConfig parse_config(std::string_view text)
{
    RunConfig config;
    int line_number = 0;
    std::map<std::string, int, std::less<>> lines;
    while (!text.empty()) {
        ++line_number;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        apply_setting(config, line, line_number);
        lines[std::string(trim(line.substr(0, line.find('='))))] = line_number;
    }
    try {
        config.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        // Range messages start with the offending key.
        const std::string message = e.what();
        const auto it = lines.find(message.substr(0, message.find(':')));
        throw ConfigError(it == lines.end() ? 0 : it->second, message);
    }
    return config;
}

std::string to_text(const RunConfig& config)
{
    std::string out;
    for (const auto& k : keys()) out += std::string(k.name) + " = " + k.get(config) + '\n';
    return out;
}

} // namespace afc
