#include "afc/errors.hpp"
#include "afc/protocols.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace afc;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

double single_oracle(double f, double d, double g)
{
    const double a0 = 1.0 / f;
    const double a1 = 2.0 / pi * std::sin(pi / f) * std::exp(-pi * g);
    return std::pow(a1 * d / 2.0, 2) * std::exp(-a0 * d);
}

double two_pass_oracle(double f, double d, double g)
{
    return single_oracle(f, d, g) * std::pow(1.0 + std::exp(-d / (2.0 * f)), 2);
}

CombSpec periodic(double f, double g)
{
    return square_comb(f, g, 1.0, std::nullopt);
}

ProtocolOptions closed_only()
{
    ProtocolOptions o;
    o.simulate = false;
    return o;
}

} // namespace

TEST_CASE("closed-form efficiencies")
{
    const auto one = single_pass(PulseSpec{}, periodic(5.0, 0.005), MediumSpec{10.0}, closed_only());
    CHECK(one.efficiency_closed_form == Approx(single_oracle(5.0, 10.0, 0.005)).epsilon(1e-12));
    CHECK(one.efficiency_closed_form == Approx(0.46).epsilon(0.005 / 0.46));
    CHECK(one.efficiency == one.efficiency_closed_form);

    const auto three = single_pass(PulseSpec{}, periodic(5.0, 0.005), MediumSpec{3.0}, closed_only());
    CHECK(three.efficiency_closed_form == Approx(0.17).epsilon(0.01 / 0.17));

    const auto two = two_pass_interfere(PulseSpec{}, periodic(5.0, 0.005), MediumSpec{10.0}, closed_only());
    CHECK(two.efficiency_closed_form == Approx(two_pass_oracle(5.0, 10.0, 0.005)).epsilon(1e-12));
    CHECK(two.efficiency_closed_form == Approx(0.86).epsilon(0.01 / 0.86));
    const auto ten = two_pass_interfere(PulseSpec{}, periodic(10.0, 0.005), MediumSpec{20.0}, closed_only());
    CHECK(ten.efficiency_closed_form == Approx(0.95).epsilon(0.01 / 0.95));
}

TEST_CASE("empty medium stores nothing")
{
    ProtocolOptions o;
    const auto one = single_pass(PulseSpec{}, periodic(5.0, 0.005), MediumSpec{0.0}, o);
    CHECK(one.efficiency_closed_form == 0.0);
    CHECK(one.efficiency < 1e-5);  // ringing of the 4 sigma spectral cut
    CHECK(one.output_energy == Approx(1.0).epsilon(1e-9));
    const auto two = two_pass_interfere(PulseSpec{}, periodic(5.0, 0.005), MediumSpec{0.0}, o);
    CHECK(two.efficiency_closed_form == 0.0);
}

TEST_CASE("simulation agrees with the closed form")
{
    for (double f : {5.0, 10.0})
        for (double d : {5.0, 10.0, 20.0}) {
            const auto comb = periodic(f, 0.005);
            const auto one = single_pass(PulseSpec{}, comb, MediumSpec{d});
            CHECK(one.efficiency == Approx(one.efficiency_closed_form).epsilon(0.01));
            const auto two = two_pass_interfere(PulseSpec{}, comb, MediumSpec{d});
            CHECK(two.efficiency == Approx(two.efficiency_closed_form).epsilon(0.01));
            for (const auto& pass : two.echoes) CHECK(pass.total_intensity() <= 1.0 + 1e-9);
            CHECK(two.efficiency > one.efficiency);
        }
}

TEST_CASE("misaligned second pass")
{
    const auto comb = periodic(5.0, 0.005);
    ProtocolOptions o;
    o.mismatch.phase = 0.3;
    CHECK_THROWS_AS(two_pass_interfere(PulseSpec{}, comb, MediumSpec{10.0}, o), DomainError);
    o.mismatch = {0.01, 0.0};
    CHECK_THROWS_AS(two_pass_interfere(PulseSpec{}, comb, MediumSpec{10.0}, o), DomainError);

    o.mismatch = {0.0, pi / 2.0};
    o.allow_mismatch = true;
    const auto aligned = two_pass_interfere(PulseSpec{}, comb, MediumSpec{10.0});
    const auto skewed = two_pass_interfere(PulseSpec{}, comb, MediumSpec{10.0}, o);
    const double q = std::exp(-10.0 / 10.0);
    const double expected = std::norm(1.0 + q * std::polar(1.0, pi / 2.0)) / std::pow(1.0 + q, 2);
    CHECK(skewed.efficiency / aligned.efficiency == Approx(expected).epsilon(0.01));
    CHECK(skewed.efficiency < aligned.efficiency);
}

TEST_CASE("output phase follows the input phase")
{
    const auto comb = periodic(5.0, 0.005);
    const auto base = single_pass(PulseSpec{}, comb, MediumSpec{10.0});
    for (double phi : {0.4, 1.9, -2.7}) {
        PulseSpec p;
        p.phase = phi;
        const auto r = single_pass(p, comb, MediumSpec{10.0});
        const auto rotated = base.simulated_echo * std::polar(1.0, phi);
        CHECK(std::abs(r.simulated_echo - rotated) < 1e-13);
        CHECK(std::abs(r.simulated_prompt - base.simulated_prompt * std::polar(1.0, phi)) < 1e-13);
        CHECK(r.efficiency == Approx(base.efficiency).epsilon(1e-12));
    }
}

TEST_CASE("time-bin qubit: two passes store the qubit")
{
    TimeBinQubit q;
    q.tau = 0.5 * pi;
    q.phi = 0.7;
    const auto comb = periodic(5.0, 0.005);
    const auto out = timebin_transform(q, comb, MediumSpec{10.0}, 2);
    CHECK(out.p1d() + out.p2d() == Approx(two_pass_oracle(5.0, 10.0, 0.005)).epsilon(1e-12));
    CHECK(out.p1d() + out.p2d() == Approx(0.86).epsilon(0.01 / 0.86));
    CHECK(out.phi == q.phi);
    CHECK(std::abs(out.c1d * q.c2 - out.c2d * q.c1) <= 1e-15);
    CHECK(std::norm(out.c1p) + std::norm(out.c2p) + out.p1d() + out.p2d() <= 1.0);
}

TEST_CASE("time-bin qubit: ratio and phase survive for any input")
{
    const auto comb = periodic(10.0, 0.005);
    for (double theta : {0.1, 0.6, 1.2})
        for (double phi : {0.0, 1.0, 3.0})
            for (int passes : {1, 2}) {
                TimeBinQubit q;
                q.c1 = std::cos(theta);
                q.c2 = std::sin(theta);
                q.phi = phi;
                q.tau = 0.5 * pi;
                const auto out = timebin_transform(q, comb, MediumSpec{20.0}, passes);
                CHECK(std::abs(out.c1d * q.c2 - out.c2d * q.c1) <= 1e-15);
                CHECK(out.phi == phi);
                CHECK(out.p1d() + out.p2d() <= 1.0);
            }
}

TEST_CASE("time-bin qubit: simulation tracks the closed form")
{
    TimeBinQubit q;
    q.c1 = std::sqrt(0.3);
    q.c2 = std::sqrt(0.7);
    q.phi = 1.1;
    q.tau = 0.5 * pi;
    const auto comb = periodic(5.0, 0.005);
    for (int passes : {1, 2}) {
        const auto closed = timebin_transform(q, comb, MediumSpec{10.0}, passes);
        const auto sim = timebin_simulate(q, comb, MediumSpec{10.0}, passes);
        CHECK(sim.p1d() == Approx(closed.p1d()).epsilon(0.01));
        CHECK(sim.p2d() == Approx(closed.p2d()).epsilon(0.01));
        CHECK(std::abs(std::arg(sim.c2d / sim.c1d) - std::arg(closed.c2d / closed.c1d)) < 1e-3);
    }
}

TEST_CASE("degenerate qubit occupies one bin")
{
    TimeBinQubit q;
    q.c1 = 1.0;
    q.c2 = 0.0;
    q.tau = 0.5 * pi;
    const auto out = timebin_transform(q, periodic(5.0, 0.005), MediumSpec{10.0}, 1);
    CHECK(out.p2d() == 0.0);
    CHECK(out.p1d() == Approx(single_oracle(5.0, 10.0, 0.005)).epsilon(1e-12));
}

TEST_CASE("invalid qubits are rejected")
{
    TimeBinQubit q;
    q.tau = 0.5 * pi;
    q.c1 = 0.9;
    q.c2 = 0.9;
    CHECK_THROWS_AS(q.validate(pi), DomainError);
    q.c1 = 1.0;
    q.c2 = 0.0;
    q.tau = pi;
    CHECK_THROWS_AS(q.validate(pi), DomainError);
    q.tau = 0.5;
    CHECK_THROWS_AS(q.validate(pi), DomainError);
    q.tau = 0.5 * pi;
    CHECK_NOTHROW(q.validate(pi));
    CHECK_THROWS_AS(timebin_transform(q, periodic(5.0, 0.0), MediumSpec{10.0}, 3), DomainError);
}
