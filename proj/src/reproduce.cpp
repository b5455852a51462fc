#include "afc/reproduce.hpp"

#include "afc/errors.hpp"
#include "afc/protocols.hpp"
#include "afc/susceptibility.hpp"
#include "afc/sweep.hpp"
#include "afc/train.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

namespace afc {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

struct Context {
    std::filesystem::path dir;
    csv::Units units;
    ReproduceOutcome* outcome;

    void save(const std::string& name, const csv::Table& table) const
    {
        const auto path = dir / name;
        csv::write(path, table);
        outcome->files.push_back(path);
    }
    void check(std::string name, double value, double expected, double tolerance) const
    {
        outcome->checks.push_back({std::move(name), value, expected, tolerance});
    }
};

double intensity_of(const PulseTrain& train, int k)
{
    const auto* e = train.find(k);
    return e ? e->intensity : 0.0;
}

int dominant_delayed(const PulseTrain& train)
{
    int best = -1;
    double value = -1.0;
    for (const auto& e : train.entries) {
        if (e.k >= 1 && e.intensity > value) {
            value = e.intensity;
            best = e.k;
        }
    }
    return best;
}

void fig1(const Context& c)
{
    const auto h = harmonic_comb();
    const auto l = lorentzian_comb(10.0);
    const auto s = square_comb(10.0);
    csv::Table t;
    t.header = {"nu_over_nu0", "harmonic", "lorentzian", "square"};
    for (double x : linspace(-4.0, 4.0, 1601))
        t.add_row({x, population_difference(h, x), population_difference(l, x), population_difference(s, x)});
    c.save("fig1_profiles.csv", t);
    c.check("square n(nu0)", population_difference(s, 1.0), 1.0, 0.0);
    c.check("harmonic n(0)", population_difference(h, 0.0), 0.0, 0.0);
    c.check("square n(nu0 + 1.01 delta)", population_difference(s, 1.0 + 0.101), 0.0, 0.0);
}

SweepResult first_echo_sweep(double finesse, double d_max)
{
    SweepRequest r;
    r.model = ResponseModel::IdealSeries;
    r.fixed.finesse = finesse;
    r.axes = {SweepAxis{"d_p", 0.0, d_max, static_cast<int>(d_max * 10) + 1}};
    return sweep(r);
}

void fig2a(const Context& c)
{
    for (auto [f, d_max, d_opt, i_opt] : {std::tuple{2.0, 12.0, 4.0, 0.219}, std::tuple{10.0, 60.0, 20.0, 0.524}}) {
        const auto r = first_echo_sweep(f, d_max);
        const std::string tag = "F=" + csv::format(f);
        c.save("fig2a_F" + csv::format(f) + ".csv", csv::sweep(r));
        c.check(tag + " argmax d_p", r.best_values.at(0), d_opt, 0.01);
        c.check(tag + " I1 max", r.best_efficiency, i_opt, 0.002);
    }
}

void fig2b(const Context& c)
{
    std::vector<double> x;
    for (int i = 1; i <= 100; ++i) x.push_back(0.005 * i);
    x.push_back(1.0 / 32.0);
    x.push_back(0.1);
    std::sort(x.begin(), x.end());
    c.save("fig2b_optimal.csv", csv::optimal(optimal_curve(x)));
    c.check("I_gl(F=10)", optimal_curve({0.1}).at(0).intensity, 0.524, 0.002);
    c.check("I_gl(F=32)", optimal_curve({1.0 / 32.0}).at(0).intensity, 0.54, 0.005);
}

void fig3(const Context& c)
{
    auto comb = square_comb(10.0, 0.01);
    const auto r = sample_response(comb, ResponseModel::Broadened, linspace(-3.0, 3.0, 1201));
    c.save("fig3_broadened.csv", csv::spectrum(r, c.units));
    c.check("eps''(nu0) full sum", epsilon_broadened(1.0, 0.1, 1.0, 0.01, 9).absorption, 0.937, 0.001);
    c.check("eps''(nu0) first order", epsilon_peak_center(0.1, 1.0, 0.01), 0.937, 0.001);
}

void fig4(const Context& c)
{
    // The identity A0 = delta/nu0 is a property of the unbounded comb; the
    // last column shows the edge loss of the 20-peak comb.
    csv::Table t;
    t.header = {"delta_over_nu0", "A0_gamma_0.01", "A0_gamma_0.1", "A0_gamma_0.1_N9"};
    double worst = 0.0;
    for (double w : linspace(0.05, 0.9, 18)) {
        const double a = broadened_A_coefficients(w, 1.0, 0.01, std::nullopt).a0;
        const double b = broadened_A_coefficients(w, 1.0, 0.1, std::nullopt).a0;
        const double b9 = broadened_A_coefficients(w, 1.0, 0.1, kDefaultPairCount).a0;
        worst = std::max({worst, std::abs(a - w), std::abs(b - w)});
        t.add_row({w, a, b, b9});
    }
    c.save("fig4_A0.csv", t);
    c.check("max |A0 - delta/nu0|", worst, 0.0, 1e-3);
}

void fig5(const Context& c)
{
    const auto r = sample_response(square_comb(10.0), ResponseModel::IdealSeries, linspace(-3.0, 3.0, 1201));
    c.save("fig5_ideal.csv", csv::spectrum(r, c.units));
    // Uniform samples over one period integrate the trigonometric polynomial exactly.
    const int n = 8192;
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += chi_square_series(-1.0 + 2.0 * i / n, 0.1).absorption;
    c.check("mean absorption", mean / n, 0.1, 1e-6);
}

struct Panel {
    const char* name;
    double finesse;
    double d_p;
    double gamma;
    ResponseModel model;
    int dominant;
    double expected;
    double tolerance;
};

void fig6(const Context& c, const Panel& p)
{
    ProtocolOptions o;
    o.model = p.model;
    o.k_max = 5;
    const auto comb = square_comb(p.finesse, p.gamma);
    const auto r = single_pass(PulseSpec{}, comb, MediumSpec{p.d_p}, o);
    const auto setup_grid = FrequencyGrid::for_pulse(5.0);
    const auto h = build_transfer(comb, MediumSpec{p.d_p}, setup_grid, p.model);
    const auto trace = propagate(gaussian_spectrum(PulseSpec{}, setup_grid), h, {4, 5});
    const std::string base = std::string("fig6") + p.name;
    c.save(base + "_trace.csv", csv::trace(trace, comb.delay(), -1.0, 5.0, c.units));
    c.save(base + "_train.csv", csv::train(r.combined));
    c.check("I" + std::to_string(p.dominant), intensity_of(r.combined, p.dominant), p.expected, p.tolerance);
    c.check("dominant delayed pulse", dominant_delayed(r.combined), p.dominant, 0.0);
}

void fig7(const Context& c)
{
    const auto comb = square_comb(5.0);
    std::vector<csv::DepthRow> rows;
    double best_i1 = 0.0, best_d1 = 0.0;
    for (double d : linspace(0.0, 60.0, 601)) {
        const auto t = closed_form_train(comb, ResponseModel::IdealSeries, d, 3);
        rows.push_back({d, t.intensity(1), t.intensity(2), t.intensity(3)});
        if (t.intensity(1) > best_i1) {
            best_i1 = t.intensity(1);
            best_d1 = d;
        }
    }
    c.save("fig7_intensities.csv", csv::depth_scan(rows));
    c.check("max I1", best_i1, std::pow(10.0 / pi * std::sin(pi / 5.0), 2) * std::exp(-2.0), 1e-6);
    c.check("argmax I1 d_p", best_d1, 10.0, 0.1);
}

void fig8(const Context& c)
{
    TimeBinQubit q;
    q.c1 = std::sqrt(0.5);
    q.c2 = std::sqrt(0.5);
    q.phi = pi / 3.0;
    q.tau = 0.5 * pi;
    q.sigma = 7.0;
    const auto comb = square_comb(5.0);
    const MediumSpec medium{10.0};
    ProtocolOptions o;
    o.model = ResponseModel::IdealSeries;
    const auto trace = timebin_trace(q, comb, medium, o);
    c.save("fig8_trace.csv", csv::trace(trace, comb.delay(), -1.0, 3.0, c.units));
    const auto sim = timebin_simulate(q, comb, medium, 1, o);
    const auto cf = timebin_transform(q, comb, medium, 1, ResponseModel::IdealSeries);
    c.check("|c1d/c2d|", std::abs(sim.c1d / sim.c2d), 1.0, 1e-2);
    c.check("delayed phi", sim.phi, q.phi, 1e-2);
    c.check("p1d simulated / closed form", sim.p1d() / cf.p1d(), 1.0, 1e-2);
}

void efficiency(const Context& c, const std::string& file, bool two_pass, double finesse, double d_p,
                double expected, double tolerance)
{
    // The periodic comb is the setting of the closed forms.
    const auto comb = square_comb(finesse, 0.005, 1.0, std::nullopt);
    ProtocolOptions o;
    const auto r = two_pass ? two_pass_interfere(PulseSpec{}, comb, MediumSpec{d_p}, o)
                            : single_pass(PulseSpec{}, comb, MediumSpec{d_p}, o);
    c.save(file, csv::protocol({{two_pass ? "two_pass" : "single_pass", finesse, d_p, 0.005,
                                 r.efficiency_closed_form, r.efficiency}}));
    c.check("efficiency (closed form)", r.efficiency_closed_form, expected, tolerance);
    c.check("simulated / closed form", r.efficiency / r.efficiency_closed_form, 1.0, 0.01);
}

void first_echo_value(const Context& c, const std::string& file, CombShape shape, double finesse,
                      double d_p, double expected, double tolerance)
{
    const double c1 = first_echo_coefficient(shape, d_p, finesse);
    csv::Table t;
    t.header = {"shape", "F", "d_p", "I1"};
    t.rows.push_back({std::string(to_string(shape)), csv::format(finesse), csv::format(d_p), csv::format(c1 * c1)});
    c.save(file, t);
    c.check("I1", c1 * c1, expected, tolerance);
}

void window_center(const Context& c)
{
    const double e0 = epsilon_window_center(0.1, 1.0, 0.01, kDefaultPairCount);
    csv::Table t;
    t.header = {"pairs", "eps_window"};
    for (int n : {0, 1, 2, 5, 9, 20, 100, 1000}) t.add_row({double(n), epsilon_window_center(0.1, 1.0, 0.01, n)});
    t.rows.push_back({"inf", csv::format(epsilon_window_center(0.1, 1.0, 0.01, std::nullopt))});
    c.save("eps_window.csv", t);
    c.check("eps''(0), N=9", e0, 1.57e-3, 3e-5);
    c.check("exp(-20 eps''(0))", std::exp(-20.0 * e0), 0.97, 0.005);
}

using Runner = std::function<void(const Context&)>;

const std::vector<std::pair<std::string, Runner>>& table()
{
    static const std::vector<std::pair<std::string, Runner>> targets = {
        {"fig1", fig1},
        {"fig2a", fig2a},
        {"fig2b", fig2b},
        {"fig3", fig3},
        {"fig4", fig4},
        {"fig5", fig5},
        {"fig6a", [](const Context& c) { fig6(c, {"a", 2.0, 4.0, 0.0, ResponseModel::IdealSeries, 1, 0.2194, 0.0022}); }},
        {"fig6b", [](const Context& c) { fig6(c, {"b", 5.0, 10.0, 0.005, ResponseModel::Broadened, 1, 0.46, 0.01}); }},
        {"fig6c", [](const Context& c) { fig6(c, {"c", 5.0, 25.0, 0.0, ResponseModel::IdealSeries, 2, 0.3450, 0.0035}); }},
        {"fig6d", [](const Context& c) { fig6(c, {"d", 5.0, 42.0, 0.0, ResponseModel::IdealSeries, 3, 0.2779, 0.0028}); }},
        {"fig7", fig7},
        {"fig8", fig8},
        {"eff17", [](const Context& c) { efficiency(c, "eff17.csv", false, 5.0, 3.0, 0.17, 0.005); }},
        {"eff46", [](const Context& c) { efficiency(c, "eff46.csv", false, 5.0, 10.0, 0.46, 0.005); }},
        {"eff86", [](const Context& c) { efficiency(c, "eff86.csv", true, 5.0, 10.0, 0.86, 0.01); }},
        {"eff95", [](const Context& c) { efficiency(c, "eff95.csv", true, 10.0, 20.0, 0.95, 0.01); }},
        {"eff54",
         [](const Context& c) {
             const auto row = optimal_curve({1.0 / 32.0}).at(0);
             c.save("eff54.csv", csv::optimal({row}));
             c.check("I_gl(F=32)", row.intensity, 0.54, 0.005);
             c.check("d_p*", row.optimal_depth, 64.0, 0.0);
         }},
        {"i1-0219", [](const Context& c) { first_echo_value(c, "i1_0219.csv", CombShape::Square, 2.0, 4.0, 0.219, 0.002); }},
        {"i1-0524", [](const Context& c) { first_echo_value(c, "i1_0524.csv", CombShape::Square, 10.0, 20.0, 0.524, 0.002); }},
        {"i1-d2f10", [](const Context& c) { first_echo_value(c, "i1_d2f10.csv", CombShape::Square, 10.0, 2.0, 0.0317, 0.0005); }},
        {"harmonic-0135", [](const Context& c) { first_echo_value(c, "harmonic_0135.csv", CombShape::Harmonic, 2.0, 4.0, std::exp(-2.0), 1e-4); }},
        {"eps-window", window_center},
    };
    return targets;
}

} // namespace

bool Check::pass() const
{
    return std::isfinite(value) && std::abs(value - expected) <= tolerance;
}

bool ReproduceOutcome::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

std::vector<std::string> reproduce_targets()
{
    std::vector<std::string> names;
    for (const auto& t : table()) names.push_back(t.first);
    return names;
}

ReproduceOutcome reproduce(std::string_view target, const std::filesystem::path& out_dir, const csv::Units& units)
{
    const auto& targets = table();
    const auto it = std::find_if(targets.begin(), targets.end(), [&](const auto& t) { return t.first == target; });
    if (it == targets.end()) throw DomainError("unknown reproduce target '" + std::string(target) + "'");
    ReproduceOutcome outcome;
    outcome.target = it->first;
    it->second(Context{out_dir, units, &outcome});
    return outcome;
}

} // namespace afc
