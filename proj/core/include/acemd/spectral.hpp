#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acemd/config.hpp"
#include "acemd/decomposition.hpp"
#include "acemd/series.hpp"

namespace acemd {

/// x + iH[x] by the frequency-domain method: negative-frequency bins are
/// zeroed, positive bins doubled, DC (and Nyquist for even n) kept once.
std::vector<std::complex<double>> analytic_signal(std::span<const double> x);

/// Imaginary part of the analytic signal. Linear in x. Throws TooShort
/// below kMinSeriesLength samples.
std::vector<double> hilbert_transform(std::span<const double> x);
TimeSeries hilbert_transform(const TimeSeries& x);

/// Instantaneous amplitude, unwrapped phase, frequency (cycles per
/// observation) and energy of one mode.
struct AnalyticMode {
    std::vector<double> amplitude;
    std::vector<double> phase;
    std::vector<double> frequency;
    std::vector<double> energy;
    /// false for the first/last two samples and wherever frequency <= 0
    std::vector<bool> valid;

    std::size_t size() const noexcept { return amplitude.size(); }
    std::size_t valid_count() const noexcept;
};

/// Frequency from central differences of the unwrapped phase (one-sided at
/// the ends); energy = amplitude^2. Throws TooShort below kMinSeriesLength.
AnalyticMode analytic_mode(std::span<const double> c);

/// One point of the sparse Hilbert spectrum.
struct SpectrumPoint {
    std::size_t mode;  ///< 0-based IMF index
    std::size_t t;
    double frequency;
    double energy;
};

/// (t, f_j(t), E_j(t)) for every IMF and valid sample; the residual is
/// excluded. Throws NoModes when the decomposition has no IMF.
std::vector<SpectrumPoint> hilbert_spectrum(const Decomposition& d);

struct CentralPoint {
    double frequency = 0.0;  ///< geometric mean of f over valid samples
    double energy = 0.0;     ///< geometric mean of E over valid, non-negligible samples
    std::size_t valid_samples = 0;
    /// valid samples left out of the energy mean because E < 1e-12 max E
    std::size_t excluded_energy_samples = 0;
};

/// Central frequency and energy. Throws InsufficientValidSamples with fewer
/// than 8 valid samples or an identically zero mode.
CentralPoint central_frequency_energy(const AnalyticMode& m);

struct PowerLawFit {
    double alpha = 0.0;  ///< negative OLS slope of log E on log f
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Unweighted least squares of log E on log f. Throws TooFewModes below
/// three points and DegenerateFit when every frequency is equal.
PowerLawFit power_exponent(std::span<const CentralPoint> points);

struct ModeSpectrum {
    std::size_t mode;  ///< 0-based IMF index
    CentralPoint central;
};

struct SpectrumSummary {
    std::vector<ModeSpectrum> modes;
    /// IMFs without enough valid samples for a central point.
    std::vector<std::size_t> skipped_modes;
    /// Present when at least three modes produced central points.
    std::optional<PowerLawFit> fit;

    std::size_t modes_used() const noexcept { return modes.size(); }
};

SpectrumSummary summarize_spectrum(const Decomposition& d);

/// sum_j (log f1_j - log f2_j)^2. Both summaries must cover the same mode
/// indices (ModeCountMismatch otherwise).
double frequency_deviation(const SpectrumSummary& s1, const SpectrumSummary& s2);

struct RollingSpectrumPoint {
    std::size_t window_index = 0;
    std::size_t window_end = 0;  ///< index of the last sample in the window
    SpectrumSummary summary;
    std::string error;  ///< non-empty when the window could not be decomposed
};

/// Seed for rolling window w; window 0 keeps the base seed.
std::uint64_t window_seed(std::uint64_t seed, std::size_t window_index) noexcept;

/// ACE-EMD plus spectral summary on trailing windows ending at
/// window-1, window-1+step, ... Requires window >= 256 and step >= 1.
std::vector<RollingSpectrumPoint> rolling_spectrum(const TimeSeries& x, std::size_t window, std::size_t step,
                                                   const EnsembleConfig& cfg);

inline constexpr std::size_t kMinSpectrumWindow = 256;
inline constexpr std::size_t kDefaultSpectrumStep = 21;

}  // namespace acemd
