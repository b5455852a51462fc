#pragma once

// Coefficients of the output pulse train
//   E_out(t) = prompt_factor * sum_k a_k E_in(t - k T).

#include "afc/comb.hpp"
#include "afc/propagation.hpp"
#include "afc/susceptibility.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace afc {

enum class Provenance { ClosedForm, Quadrature };

struct TrainCoefficients {
    double prompt_factor = 1.0;
    std::vector<std::complex<double>> a;  // a[0] == 1 for closed forms
    Provenance provenance = Provenance::ClosedForm;

    /// |a_k|^2 prompt_factor^2, the normalized peak intensity of pulse k.
    double intensity(int k) const;
};

/// C0: exp(-d/2F) for square and harmonic (F = 2), exp(-pi d / 4F) for Lorentzian.
double prompt_coefficient(CombShape shape, double d_p, double finesse);

/// C1 = C0 times the first-harmonic weight, times exp(-gammaT).
double first_echo_coefficient(CombShape shape, double d_p, double finesse,
                              double gamma_t = 0.0);

/// Square comb: a_k from the exponent harmonics
/// b_k = -(d/(k pi)) (-1)^k sin(k pi / F) exp(-k gammaT).
TrainCoefficients series_coefficients_square(double d_p, double finesse, int k_max,
                                             double gamma_t = 0.0);

/// a_k exp(-d/2F) = (1/2nu0) int_{-nu0}^{nu0} H(nu) exp(-i k pi nu/nu0) dnu
/// by adaptive quadrature of transfer.evaluate; a is renormalized so that
/// a[0] = 1 and prompt_factor holds the k = 0 integral.
TrainCoefficients coefficients_numeric(const TransferFunction& transfer, int k_max,
                                       double abs_tol = 1e-9);

/// Exact harmonic-comb train: a_k = (d/4)^k / k!, prompt factor exp(-d/4).
TrainCoefficients harmonic_train(double d_p, int k_max);

struct BroadenedMoments {
    double a0 = 0.0;                 // (1/2nu0) int eps'' over one period
    std::complex<double> a1;         // absorption-only integral
    std::complex<double> a1_full;    // integral of eps'' - i eps'
    double a1_closed_form = 0.0;     // 2 sin(pi delta/nu0) exp(-pi gamma/nu0) / pi
    double error = 0.0;              // summed quadrature error estimate
};

/// A0 and A1 for the broadened square comb by quadrature over one period.
BroadenedMoments broadened_A_coefficients(double delta, double nu0, double gamma,
                                          std::optional<int> pair_count);

/// Prompt/first-echo moments (A0, A1) of the periodic comb in closed form;
/// the homogeneous decay enters only for the Broadened model.
struct TrainMoments {
    double a0 = 0.0;
    double a1 = 0.0;
};
TrainMoments train_moments(const CombSpec& comb, ResponseModel model);

/// Full closed-form train of the periodic comb: exp of the exponent
/// harmonics, each damped by exp(-k pi gamma/nu0) under the Broadened model.
TrainCoefficients closed_form_train(const CombSpec& comb, ResponseModel model,
                                    double d_p, int k_max);

} // namespace afc
