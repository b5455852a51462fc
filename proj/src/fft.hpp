#pragma once

// In-place complex DFT through FFTW. Planning is serialized because FFTW's
// planner is not thread-safe; execution is reentrant.

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

namespace afc::detail {

enum class FftDirection { Forward = FFTW_FORWARD, Backward = FFTW_BACKWARD };

inline std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

/// Unnormalized transform: sum_n x_n exp(-+ 2 pi i k n / N).
inline void fft_in_place(std::vector<std::complex<double>>& data, FftDirection direction)
{
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr,
                                static_cast<int>(direction), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
}

} // namespace afc::detail
