#pragma once

#include <string>
#include <vector>

#include "hiha/grid.hpp"

namespace hiha {

/// How FFT mode indices are measured against the band boundaries.
/// ModeIndex compares the integer mode radius directly; Angular scales by pi
/// (mode m on the [-1,1] domain has angular frequency pi*m). ModeIndex is the
/// default: with omega=14, n_c=256 it yields a radius-2 low-mode ball instead
/// of collapsing the low band onto DC.
enum class FreqUnit : uint8_t {
    ModeIndex = 0,
    Angular = 1,
};

/// Band boundaries derived from the Siren initialization bound:
/// base = omega*sqrt(6/n_c), low = [0, base), mid = [base, 3*base),
/// high = [3*base, inf).
struct BandThresholds {
    double omega = 0.0;
    int n_c = 0;
    double base_freq = 0.0;
    FreqUnit freq_unit = FreqUnit::ModeIndex;

    static BandThresholds make(double omega, int n_c,
                               FreqUnit unit = FreqUnit::ModeIndex);

    double mid_upper() const { return 3.0 * base_freq; }
};

/// omega*sqrt(6/n_c) in 64-bit. Rejects nonpositive inputs.
double base_frequency(double omega, int n_c);

/// Low/mid/high spatial-domain components. The three bands sum back to the
/// input up to FFT round-off; each band is real because the mode masks are
/// symmetric under negation.
struct SpectralBands {
    GridField low;
    GridField mid;
    GridField high;
    BandThresholds thresholds;
    std::vector<std::string> warnings;
};

/// Masked 3D FFT split. Every mode belongs to exactly one band by its radial
/// frequency rho = ||(m_level, m_lat, m_lon)||_2 over signed (Nyquist-folded)
/// mode indices. Axes of extent 1 contribute 0 to rho (warning recorded); the
/// level axis only participates in the transform when levels >= 4, otherwise
/// each level is transformed 2D and m_level = 0.
SpectralBands decompose(const GridField& field, const BandThresholds& thresholds);

/// Elementwise low + mid + high.
GridField recombine(const SpectralBands& bands);

/// Sum of squares in 64-bit, for Parseval checks and energy reports.
double field_energy(const GridField& field);

}  // namespace hiha
