#include "afc/cli.hpp"

#include "afc/config.hpp"
#include "afc/csv.hpp"
#include "afc/errors.hpp"
#include "afc/protocols.hpp"
#include "afc/reproduce.hpp"
#include "afc/train.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace afc {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::string model;
    int k_max = -1;
    bool seedless = false;
    std::string physical;
    std::vector<std::string> settings;
    bool two_pass = false;
    bool numeric = false;
    std::vector<std::string> targets;
};

RunConfig load_config(const Options& o)
{
    RunConfig config;
    if (!o.config_path.empty()) {
        std::ifstream f(o.config_path, std::ios::binary);
        if (!f) throw DomainError("cannot read config file '" + o.config_path + "'");
        std::stringstream buf;
        buf << f.rdbuf();
        config = parse_config(buf.str());
    }
    for (const auto& s : o.settings) apply_setting(config, s);
    if (!o.model.empty()) config.model = parse_model(o.model);
    if (o.k_max >= 0) config.k_max = o.k_max;
    config.validate();
    return config;
}

csv::Units parse_units(const std::string& text)
{
    csv::Units u;
    if (text.empty()) return u;
    const std::string prefix = "nu0=";
    if (text.rfind(prefix, 0) != 0) throw DomainError("--physical expects nu0=<MHz>");
    try {
        std::size_t used = 0;
        const double v = std::stod(text.substr(prefix.size()), &used);
        if (used != text.size() - prefix.size() || !(v > 0.0)) throw std::invalid_argument("");
        u.nu0_mhz = v;
    } catch (const std::exception&) {
        throw DomainError("--physical: nu0 must be a positive number of MHz");
    }
    return u;
}

std::vector<double> nu_axis(const RunConfig& c)
{
    std::vector<double> v(static_cast<std::size_t>(c.nu_steps));
    for (int i = 0; i < c.nu_steps; ++i) v[i] = c.nu_min + (c.nu_max - c.nu_min) * i / (c.nu_steps - 1);
    return v;
}

ProtocolOptions protocol_options(const RunConfig& c)
{
    ProtocolOptions o;
    o.model = c.model;
    o.harmonics = c.harmonics;
    o.grid = c.grid();
    o.k_max = c.k_max;
    o.oversample = c.oversample;
    return o;
}

std::string summary_train(const PulseTrain& t)
{
    std::string s;
    for (const auto& e : t.entries) s += " I" + std::to_string(e.k) + "=" + csv::format(e.intensity);
    return s;
}

int run(const std::string& name, const Options& o, std::ostream& out, std::ostream& err)
{
    const RunConfig c = load_config(o);
    const csv::Units units = parse_units(o.physical);
    const fs::path dir(o.out_dir);

    if (name == "spectrum") {
        const auto r = sample_response(c.comb(), c.model, nu_axis(c), c.harmonics);
        csv::write(dir / "spectrum.csv", csv::spectrum(r, units));
        out << "spectrum: points=" << r.nu.size() << " model=" << to_string(c.model) << " file="
            << (dir / "spectrum.csv").string() << '\n';
        return 0;
    }
    if (name == "transfer") {
        const auto comb = c.comb();
        const auto grid = c.grid();
        grid.validate(c.sigma, comb.nu0);
        const auto h = build_transfer(comb, c.medium(), grid, c.model, c.harmonics);
        csv::write(dir / "transfer.csv", csv::transfer(h, units));
        double peak = 0.0;
        for (const auto& v : h.values) peak = std::max(peak, std::norm(v));
        out << "transfer: samples=" << h.values.size() << " max_abs_h2=" << csv::format(peak)
            << " file=" << (dir / "transfer.csv").string() << '\n';
        return 0;
    }
    if (name == "propagate") {
        const auto comb = c.comb();
        const auto grid = c.grid();
        grid.validate(c.sigma, comb.nu0);
        const auto h = build_transfer(comb, c.medium(), grid, c.model, c.harmonics);
        const auto signal = propagate(gaussian_spectrum(c.pulse(), grid), h, {c.oversample, c.k_max});
        TrainExtraction ex;
        ex.k_max = c.k_max;
        ex.origin = c.center;
        ex.sigma = c.sigma;
        const auto train = extract_train(signal, comb.delay(), ex);
        for (const auto& w : train.warnings) err << "warning: " << w << '\n';
        csv::write(dir / "trace.csv", csv::trace(signal, comb.delay(), c.t_min, c.t_max, units));
        csv::write(dir / "train.csv", csv::train(train));
        out << "propagate:" << summary_train(train) << '\n';
        return 0;
    }
    if (name == "train") {
        const auto comb = c.comb();
        TrainCoefficients t;
        if (o.numeric) {
            const auto h = build_transfer(comb, c.medium(), c.grid(), c.model, c.harmonics);
            t = coefficients_numeric(h, c.k_max);
        } else {
            t = closed_form_train(comb, c.model, c.d_p, c.k_max);
        }
        csv::write(dir / "coefficients.csv", csv::coefficients(t));
        out << "train:";
        for (std::size_t k = 0; k < t.a.size(); ++k)
            out << " I" << k << '=' << csv::format(t.intensity(static_cast<int>(k)));
        out << '\n';
        return 0;
    }
    if (name == "protocol") {
        const auto comb = c.comb();
        const auto opts = protocol_options(c);
        const auto r = o.two_pass ? two_pass_interfere(c.pulse(), comb, c.medium(), opts)
                                  : single_pass(c.pulse(), comb, c.medium(), opts);
        for (const auto& w : r.warnings) err << "warning: " << w << '\n';
        const double gamma = comb.gamma / comb.nu0;
        csv::write(dir / "protocol.csv",
                   csv::protocol({{o.two_pass ? "two_pass" : "single_pass", finesse(comb), c.d_p, gamma,
                                   r.efficiency_closed_form, r.efficiency}}));
        out << "efficiency=" << csv::format(r.efficiency_closed_form)
            << " simulated=" << csv::format(r.efficiency) << '\n';
        return 0;
    }
    if (name == "sweep") {
        const auto r = sweep(c.sweep_request());
        const auto table = csv::sweep(r);
        csv::write(dir / "sweep.csv", table);
        out << table.comments.back() << '\n';
        return 0;
    }
    if (name == "reproduce") {
        std::vector<std::string> targets;
        for (const auto& t : o.targets) {
            if (t == "all") {
                const auto all = reproduce_targets();
                targets.insert(targets.end(), all.begin(), all.end());
            } else {
                targets.push_back(t);
            }
        }
        bool ok = true;
        for (const auto& t : targets) {
            const auto outcome = reproduce(t, dir, units);
            for (const auto& check : outcome.checks) {
                out << outcome.target << ": " << check.name << " = " << csv::format(check.value)
                    << " (expected " << csv::format(check.expected) << " +- " << csv::format(check.tolerance)
                    << ") " << (check.pass() ? "PASS" : "FAIL") << '\n';
            }
            ok = ok && outcome.pass();
        }
        return ok ? 0 : 2;
    }
    throw DomainError("unknown subcommand '" + name + "'");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Atomic-frequency-comb memory simulator", "afcsim"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--config", o.config_path, "key = value configuration file");
    app.add_option("--out", o.out_dir, "output directory for CSV artifacts");
    app.add_option("--model", o.model, "response model: ideal, exact or broadened");
    app.add_option("--k-max", o.k_max, "highest delay index to report");
    app.add_flag("--seedless", o.seedless, "reserved; rejected (the simulator uses no random numbers)");
    app.add_option("--physical", o.physical, "write frequencies in MHz and times in us: nu0=<MHz>");
    app.add_option("--set", o.settings, "override one configuration key (key=value)");

    app.add_subcommand("spectrum", "absorption and dispersion of the comb");
    app.add_subcommand("transfer", "sampled transfer function H(nu)");
    app.add_subcommand("propagate", "propagate the Gaussian pulse and extract the train");
    auto* train = app.add_subcommand("train", "closed-form train coefficients");
    train->add_flag("--numeric", o.numeric, "integrate the transfer function instead");
    auto* protocol = app.add_subcommand("protocol", "single-pass or two-pass storage efficiency");
    protocol->add_flag("--two-pass", o.two_pass, "recycle the prompt pulse through a second comb");
    app.add_subcommand("sweep", "parameter sweep with argmax");
    auto* repro = app.add_subcommand("reproduce", "regenerate a figure or number with its expected value");
    repro->add_option("target", o.targets, "target name or 'all'")->required();

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (o.seedless) throw DomainError("--seedless is reserved: no random numbers are used anywhere");
        return run(app.get_subcommands().front()->get_name(), o, out, err);
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace afc
