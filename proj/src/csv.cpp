#include "afc/csv.hpp"

#include "afc/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace afc::csv {

std::string format(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw std::runtime_error("csv: number formatting failed");
    return std::string(buf, end);
}

void Table::add_row(const std::vector<double>& values)
{
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format(v));
    rows.push_back(std::move(row));
}

namespace {

std::string quote(const std::string& cell)
{
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + '"';
}

void append_line(std::string& out, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += quote(cells[i]);
    }
    out += '\n';
}

} // namespace

std::string Table::str() const
{
    std::string out;
    append_line(out, header);
    for (const auto& r : rows) append_line(out, r);
    for (const auto& c : comments) out += "# " + c + '\n';
    return out;
}

void write(const std::filesystem::path& path, const Table& table)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << table.str();
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

Table spectrum(const ComplexResponse& r, const Units& units)
{
    Table t;
    const double scale = units.nu0_mhz.value_or(1.0);
    t.header = {units.nu0_mhz ? "nu_MHz" : "nu_over_nu0", "absorption", "dispersion"};
    for (std::size_t i = 0; i < r.nu.size(); ++i) t.add_row({r.nu[i] * scale, r.absorption[i], r.dispersion[i]});
    return t;
}

Table trace(const TimeSignal& s, double delay, double t_min, double t_max, const Units& units)
{
    Table t;
    const double scale = units.nu0_mhz ? std::numbers::pi / *units.nu0_mhz : 1.0;
    t.header = {units.nu0_mhz ? "t_us" : "t_over_T", "intensity_over_I0", "real_amp", "imag_amp"};
    const double i0 = s.reference_intensity > 0.0 ? s.reference_intensity : 1.0;
    for (std::size_t n = 0; n < s.samples.size(); ++n) {
        const double x = s.time(n) / delay;
        if (x < t_min || x > t_max) continue;
        const auto& v = s.samples[n];
        t.add_row({x * scale, std::norm(v) / i0, v.real(), v.imag()});
    }
    return t;
}

Table transfer(const TransferFunction& h, const Units& units)
{
    Table t;
    const double scale = units.nu0_mhz.value_or(1.0);
    t.header = {units.nu0_mhz ? "nu_MHz" : "nu_over_nu0", "re_h", "im_h", "abs_h2"};
    for (std::size_t j = 0; j < h.values.size(); ++j) {
        const auto& v = h.values[j];
        t.add_row({h.grid.frequency(j) / h.nu0 * scale, v.real(), v.imag(), std::norm(v)});
    }
    return t;
}

Table train(const PulseTrain& p)
{
    Table t;
    t.header = {"k", "re_amp", "im_amp", "intensity"};
    for (const auto& e : p.entries) t.add_row({static_cast<double>(e.k), e.amplitude.real(), e.amplitude.imag(), e.intensity});
    for (const auto& w : p.warnings) t.comments.push_back("warning: " + w);
    return t;
}

Table coefficients(const TrainCoefficients& c)
{
    Table t;
    t.header = {"k", "coefficient"};
    for (std::size_t k = 0; k < c.a.size(); ++k)
        t.add_row({static_cast<double>(k), c.prompt_factor * c.a[k].real()});
    return t;
}

Table depth_scan(const std::vector<DepthRow>& rows)
{
    Table t;
    t.header = {"d_p", "I1", "I2", "I3"};
    for (const auto& r : rows) t.add_row({r.d_p, r.i1, r.i2, r.i3});
    return t;
}

Table protocol(const std::vector<ProtocolRow>& rows)
{
    Table t;
    t.header = {"protocol", "F", "d_p", "gamma_over_nu0", "efficiency_closed_form", "efficiency_simulated"};
    for (const auto& r : rows) {
        t.rows.push_back({r.protocol, format(r.finesse), format(r.d_p), format(r.gamma_over_nu0),
                          format(r.efficiency_closed_form),
                          r.efficiency_simulated ? format(*r.efficiency_simulated) : ""});
    }
    return t;
}

Table sweep(const SweepResult& result)
{
    Table t;
    t.header = result.axis_names;
    for (const char* c : {"efficiency", "I1", "I2", "I3", "status"}) t.header.emplace_back(c);
    for (const auto& r : result.rows) {
        std::vector<std::string> cells;
        for (double v : r.values) cells.push_back(format(v));
        cells.push_back(format(r.efficiency));
        for (double v : r.intensities) cells.push_back(format(v));
        cells.push_back(r.status);
        t.rows.push_back(std::move(cells));
    }
    if (result.argmax) {
        std::string line = "argmax:";
        for (std::size_t a = 0; a < result.axis_names.size(); ++a)
            line += ' ' + result.axis_names[a] + '=' + format(result.best_values[a]);
        line += " efficiency=" + format(result.best_efficiency);
        t.comments.push_back(line);
    } else {
        t.comments.push_back("argmax: none (no row evaluated successfully)");
    }
    return t;
}

Table optimal(const std::vector<OptimalRow>& rows)
{
    Table t;
    t.header = {"inv_finesse", "d_p_opt", "I_gl"};
    for (const auto& r : rows) t.add_row({r.inv_finesse, r.optimal_depth, r.intensity});
    return t;
}

} // namespace afc::csv
