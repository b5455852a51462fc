#include "afc/errors.hpp"
#include "afc/propagation.hpp"
#include "afc/train.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace afc;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

const FrequencyGrid kGrid = FrequencyGrid::for_pulse(5.0);

TimeSignal run(const CombSpec& comb, double d, ResponseModel model, const PulseSpec& pulse = {})
{
    const auto h = build_transfer(comb, MediumSpec{d}, kGrid, model);
    return propagate(gaussian_spectrum(pulse, kGrid), h);
}

double max_abs_difference(const TimeSignal& a, const TimeSignal& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) m = std::max(m, std::abs(a.samples[i] - b.samples[i]));
    return m;
}

} // namespace

TEST_CASE("empty medium transmits everything")
{
    const auto h = build_transfer(square_comb(5.0), MediumSpec{0.0}, kGrid, ResponseModel::IdealSeries);
    for (const auto& v : h.values) CHECK(v == std::complex<double>(1.0));
}

TEST_CASE("Beer's law at a peak centre and the broadened window")
{
    const auto h = build_transfer(square_comb(5.0, 0.0, 1.0, std::nullopt), MediumSpec{10.0}, kGrid,
                                  ResponseModel::IdealExact);
    CHECK(std::abs(h.evaluate(1.0)) == Approx(std::exp(-5.0)).epsilon(1e-12));
    const auto b = build_transfer(square_comb(10.0, 0.01), MediumSpec{20.0}, kGrid, ResponseModel::Broadened);
    CHECK(std::norm(b.evaluate(0.0)) == Approx(0.97).epsilon(0.005 / 0.97));
}

TEST_CASE("transfer functions are passive and Hermitian")
{
    for (const auto& c : {square_comb(5.0, 0.01), lorentzian_comb(4.0, 0.02), harmonic_comb(0.01)}) {
        const auto h = build_transfer(c, MediumSpec{12.0}, kGrid, ResponseModel::Broadened);
        for (std::size_t j = 1; j < h.values.size(); ++j) {
            CHECK(std::abs(h.values[j]) <= 1.0 + 1e-15);
            const auto mirror = h.values[h.values.size() - j];  // grid is symmetric about 0 except j = 0
            CHECK(std::abs(mirror - std::conj(h.values[j])) < 1e-12);
        }
    }
}

TEST_CASE("coarse grids are rejected")
{
    const FrequencyGrid coarse{20.0, 256};
    CHECK_THROWS_AS(build_transfer(square_comb(5.0), MediumSpec{10.0}, coarse, ResponseModel::IdealSeries),
                    NumericalError);
    CHECK_THROWS_AS(coarse.validate(5.0, 1.0), NumericalError);
    CHECK_NOTHROW(kGrid.validate(5.0, 1.0));
}

TEST_CASE("grid points on a square edge are reported")
{
    // edges of F = 2 sit on odd multiples of 0.5; spacing 1/512 lands on them
    const FrequencyGrid binary{16.0, std::size_t{1} << 14};
    CHECK_THROWS_AS(build_transfer(square_comb(2.0), MediumSpec{4.0}, binary, ResponseModel::IdealExact),
                    NumericalError);
}

TEST_CASE("Gaussian spectrum: centred pulse is real and positive")
{
    const auto s = gaussian_spectrum(PulseSpec{}, kGrid);
    std::size_t best = 0;
    for (std::size_t j = 0; j < s.values.size(); ++j) {
        CHECK(s.values[j].real() > 0.0);
        CHECK(s.values[j].imag() == 0.0);
        if (s.values[j].real() > s.values[best].real()) best = j;
    }
    CHECK(kGrid.frequency(best) == Approx(0.0));
    CHECK(s.values[best].real() == Approx(std::sqrt(pi) / 5.0));
}

TEST_CASE("shift theorem: a delay T multiplies the spectrum by exp(i nu T)")
{
    const auto s0 = gaussian_spectrum(PulseSpec{}, kGrid);
    const auto s1 = gaussian_spectrum(PulseSpec{1.0, 5.0, pi}, kGrid);
    for (std::size_t j = 0; j < s0.values.size(); j += 37) {
        const auto expected = s0.values[j] * std::polar(1.0, kGrid.frequency(j) * pi);
        CHECK(std::abs(s1.values[j] - expected) < 1e-14);
    }
}

TEST_CASE("round trips between spectrum and time")
{
    const FrequencyGrid wide{50.0, std::size_t{1} << 15};  // +-10 sigma: truncation below 1e-10
    const PulseSpec p{{0.7, 0.2}, 5.0, 0.3, 0.4};
    const auto s = gaussian_spectrum(p, wide);
    const auto t = to_time(s, 2);
    double sum = 0.0;
    for (std::size_t i = 0; i < t.samples.size(); ++i) sum += std::norm(t.samples[i] - p.field(t.time(i)));
    CHECK(std::sqrt(sum / t.samples.size()) < 1e-10);

    const auto back = to_spectrum(t, wide);
    double worst = 0.0;
    for (std::size_t j = 0; j < s.values.size(); ++j) worst = std::max(worst, std::abs(back.values[j] - s.values[j]));
    CHECK(worst < 1e-12);
}

TEST_CASE("pulse centre outside the window aliases")
{
    CHECK_THROWS_AS(gaussian_spectrum(PulseSpec{1.0, 5.0, 5000.0}, kGrid), DomainError);
    CHECK_THROWS_AS(gaussian_spectrum(PulseSpec{1.0, 0.0}, kGrid), DomainError);
}

TEST_CASE("identity filter returns the input")
{
    const auto s = gaussian_spectrum(PulseSpec{}, kGrid);
    const auto out = propagate(s, identity_transfer(kGrid));
    const auto in = to_time(s, 4);
    CHECK(max_abs_difference(out, in) < 1e-15);
    const auto train = extract_train(out, pi);
    REQUIRE(train.find(0));
    // the cut also removes erfc(2) of the peak amplitude
    CHECK(std::abs(train.find(0)->amplitude - (1.0 - std::erfc(2.0))) < 1e-6);
    CHECK(train.find(0)->intensity == Approx(1.0));
    // cutting the spectrum at 4 sigma leaves a faint ringing tail
    for (const auto& e : train.entries)
        if (e.k > 0) CHECK(e.intensity < 1e-5);
}

TEST_CASE("square comb F=2, d=4: first echo at the global maximum")
{
    const auto out = run(square_comb(2.0), 4.0, ResponseModel::IdealSeries);
    const auto train = extract_train(out, pi);
    REQUIRE(train.find(1));
    CHECK(train.find(1)->intensity == Approx(0.219).epsilon(0.002 / 0.219));
    REQUIRE(train.find(2));
    CHECK(train.find(0)->intensity > 0.1);
}

TEST_CASE("harmonic comb reproduces the Poisson train")
{
    const double d = 4.0;
    // the default window catches too much of the ringing from the 4 sigma cut
    const FrequencyGrid fine{20.0, std::size_t{1} << 15};
    const auto h = build_transfer(harmonic_comb(), MediumSpec{d}, fine, ResponseModel::Broadened);
    const auto out = propagate(gaussian_spectrum(PulseSpec{}, fine), h);
    const auto train = extract_train(out, pi);
    for (int k = 0; k <= 4; ++k) {
        const double weight = std::exp(-d / 4.0) * std::pow(d / 4.0, k) / std::tgamma(k + 1.0);
        REQUIRE(train.find(k));
        CHECK(train.find(k)->intensity == Approx(weight * weight).epsilon(0.01));
    }
}

TEST_CASE("train extraction for F=5")
{
    auto out = run(square_comb(5.0, 0.005, 1.0, std::nullopt), 10.0, ResponseModel::Broadened);
    auto train = extract_train(out, pi);
    CHECK(std::abs(train.find(0)->amplitude) == Approx(std::exp(-1.0)).epsilon(0.01));
    CHECK(train.find(1)->intensity == Approx(0.46).epsilon(0.01 / 0.46));
    CHECK(train.find(1)->peak_time == Approx(pi).epsilon(1e-3));

    out = run(square_comb(5.0), 25.0, ResponseModel::IdealSeries);
    train = extract_train(out, pi);
    for (int k : {0, 1, 3}) CHECK(train.find(2)->intensity > train.find(k)->intensity);
}

TEST_CASE("extraction preconditions and overlap warning")
{
    const auto out = run(square_comb(5.0), 10.0, ResponseModel::IdealSeries);
    TrainExtraction narrow;
    narrow.sigma = 1.0;
    CHECK_THROWS_AS(extract_train(out, pi, narrow), DomainError);
    CHECK_THROWS_AS(extract_train(out, -1.0), DomainError);

    // two broad pulses one delay apart overlap heavily
    TimeSignal s;
    s.step = 0.01;
    s.start = -10.0;
    for (int i = 0; i < 2000; ++i) {
        const double t = s.time(i);
        s.samples.emplace_back(std::exp(-0.5 * t * t) + 0.5 * std::exp(-0.5 * (t - pi) * (t - pi)));
    }
    TrainExtraction two;
    two.k_max = 1;
    CHECK_FALSE(extract_train(s, pi, two).warnings.empty());
    CHECK(extract_train(out, pi).warnings.empty());
}

TEST_CASE("window overflow is an error")
{
    const auto s = gaussian_spectrum(PulseSpec{}, kGrid);
    const auto h = build_transfer(square_comb(5.0), MediumSpec{10.0}, kGrid, ResponseModel::IdealSeries);
    PropagationOptions strict;
    strict.discontinuous_overflow_tolerance = 1e-8;
    CHECK_THROWS_AS(propagate(s, h, strict), NumericalError);
    PropagationOptions long_train;
    long_train.k_max = 5000;
    CHECK_THROWS_AS(propagate(s, h, long_train), NumericalError);
    const auto b = build_transfer(square_comb(5.0, 0.005), MediumSpec{10.0}, kGrid, ResponseModel::Broadened);
    CHECK(propagate(s, b).wrapped_fraction < 1e-8);
}

TEST_CASE("mismatched grids are rejected")
{
    const auto s = gaussian_spectrum(PulseSpec{}, kGrid);
    const FrequencyGrid other{20.0, std::size_t{1} << 13};
    CHECK_THROWS_AS(propagate(s, identity_transfer(other)), DomainError);
}

TEST_CASE("energy passivity")
{
    const auto s = gaussian_spectrum(PulseSpec{}, kGrid);
    const double e_in = to_time(s, 4).energy();
    // energy is counted over the whole periodic window, so wrap-around does not matter here
    PropagationOptions any_wrap;
    any_wrap.overflow_tolerance = any_wrap.discontinuous_overflow_tolerance = 1.0;
    const std::vector<std::pair<CombSpec, ResponseModel>> cases = {
        {square_comb(2.0), ResponseModel::IdealSeries},       {square_comb(5.0, 0.005), ResponseModel::Broadened},
        {square_comb(10.0), ResponseModel::IdealSeries},      {lorentzian_comb(5.0, 0.01), ResponseModel::Broadened},
        {harmonic_comb(), ResponseModel::Broadened},          {square_comb(5.0, 0.0, 1.0, std::nullopt), ResponseModel::IdealExact},
    };
    for (const auto& [comb, model] : cases)
        for (double d : {1.0, 10.0, 40.0}) {
            const auto out = propagate(s, build_transfer(comb, MediumSpec{d}, kGrid, model), any_wrap);
            CHECK(out.energy() <= e_in * (1.0 + 1e-9));
        }
}

TEST_CASE("echoes keep the input shape")
{
    for (double f : {5.0, 10.0}) {
        const auto comb = square_comb(f, 0.005, 1.0, std::nullopt);
        const auto out = run(comb, 2.0 * f, ResponseModel::Broadened);
        const auto train = extract_train(out, pi);
        double largest = 0.0;
        for (const auto& e : train.entries) largest = std::max(largest, std::abs(e.amplitude));
        // ringing from the 4 sigma cut is measured against the strongest pulse
        for (int k = 0; k <= 2; ++k) {
            const auto* e = train.find(k);
            REQUIRE(e);
            const std::size_t centre = out.index_of(k * pi);
            const auto half = static_cast<std::ptrdiff_t>(0.5 * pi / out.step);
            double sum = 0.0;
            int n = 0;
            for (std::ptrdiff_t i = -half; i <= half; ++i) {
                const auto j = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(centre) + i);
                const auto reference = PulseSpec{}.field(out.time(j) - k * pi);
                sum += std::norm(out.samples[j] - e->amplitude * reference) / (largest * largest);
                ++n;
            }
            CHECK(std::sqrt(sum / n) < 1e-2);
        }
    }
}

TEST_CASE("extracted amplitudes follow the analytic series")
{
    for (double f : {2.0, 5.0, 10.0})
        for (double d : {4.0, 10.0, 20.0}) {
            const auto out = run(square_comb(f), d, ResponseModel::IdealSeries);
            const auto train = extract_train(out, pi);
            const auto series = series_coefficients_square(d, f, 3);
            for (int k = 0; k <= 3; ++k) {
                const double expected = std::abs(series.a[k]) * series.prompt_factor;
                const auto* e = train.find(k);
                REQUIRE(e);
                CHECK(std::abs(e->amplitude) == Approx(expected).epsilon(0.01));
            }
        }
}

TEST_CASE("propagation is linear")
{
    const auto h = build_transfer(square_comb(5.0, 0.005), MediumSpec{10.0}, kGrid, ResponseModel::Broadened);
    const auto s1 = gaussian_spectrum(PulseSpec{}, kGrid);
    const auto s2 = gaussian_spectrum(PulseSpec{{0.3, -0.8}, 5.0, 0.7, 1.1}, kGrid);
    const std::complex<double> a{1.7, -0.4}, b{-0.2, 2.5};
    Spectrum mix = s1;
    mix *= a;
    Spectrum t2 = s2;
    t2 *= b;
    mix += t2;
    const auto lhs = propagate(mix, h);
    const auto o1 = propagate(s1, h);
    const auto o2 = propagate(s2, h);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < lhs.samples.size(); ++i) {
        const auto rhs = a * o1.samples[i] + b * o2.samples[i];
        worst = std::max(worst, std::abs(lhs.samples[i] - rhs));
        scale = std::max(scale, std::abs(rhs));
    }
    CHECK(worst <= 1e-13 * scale);
}
