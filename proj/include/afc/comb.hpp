#pragma once

// Population-difference profiles of atomic frequency combs.
//
// Frequencies are expressed in any consistent unit; nu0 fixes the scale.
// The transparency window sits at delta = 0 and absorption peaks are
// centred on odd multiples of nu0.

#include <numbers>
#include <optional>
#include <string_view>

namespace afc {

enum class CombShape { Harmonic, Lorentzian, Square };

std::string_view to_string(CombShape shape);
CombShape parse_shape(std::string_view text);

inline constexpr int kDefaultPairCount = 9;

struct CombSpec {
    CombShape shape = CombShape::Square;
    double nu0 = 1.0;         // half the peak spacing
    double half_width = 0.2;  // delta (square) or Gamma (Lorentzian)
    // 2N+2 peaks; std::nullopt selects the unbounded periodic comb.
    std::optional<int> pair_count = kDefaultPairCount;
    double gamma = 0.0;       // homogeneous coherence decay rate

    /// Throws DomainError when an invariant is violated.
    void validate() const;

    /// Echo delay T = pi / nu0.
    double delay() const { return std::numbers::pi / nu0; }

    /// half_width / nu0, i.e. 1/F for square and Lorentzian combs.
    double relative_width() const { return half_width / nu0; }

    bool operator==(const CombSpec&) const = default;
};

/// Square comb with F = nu0/delta.
CombSpec square_comb(double finesse, double gamma = 0.0, double nu0 = 1.0,
                     std::optional<int> pair_count = kDefaultPairCount);
/// Lorentzian comb with F = nu0/Gamma.
CombSpec lorentzian_comb(double finesse, double gamma = 0.0, double nu0 = 1.0,
                         std::optional<int> pair_count = kDefaultPairCount);
CombSpec harmonic_comb(double gamma = 0.0, double nu0 = 1.0);

/// n(delta) for the three comb shapes. Square peaks are closed intervals.
double population_difference(const CombSpec& comb, double delta);

/// F_H = 2, F_L = nu0/Gamma, F_S = nu0/delta.
double finesse(const CombSpec& comb);

/// Conversion between physical units and the normalized units used in all
/// output files: frequencies in nu0, times in T = pi/nu0.
struct NormalizedUnits {
    double nu0 = 1.0;

    double to_normalized_frequency(double f) const { return f / nu0; }
    double to_physical_frequency(double x) const { return x * nu0; }
    double delay() const { return std::numbers::pi / nu0; }
    double to_normalized_time(double t) const { return t / delay(); }
    double to_physical_time(double x) const { return x * delay(); }
};

} // namespace afc
