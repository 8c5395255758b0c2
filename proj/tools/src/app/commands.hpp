#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "acemd/analysis.hpp"
#include "acemd/config.hpp"
#include "acemd/ensemble.hpp"
#include "acemd/spectral.hpp"
#include "app/csv_io.hpp"

namespace acemd::app {

/// Options shared by every subcommand.
struct RunOptions {
    IngestOptions ingest;
    std::filesystem::path out_dir = "acemd_out";
    Method method = Method::ace_emd;
    EnsembleConfig config;
    bool auto_sigma = false;
    std::vector<double> sigma_grid{kDefaultSigmaGrid.begin(), kDefaultSigmaGrid.end()};
    double oi_threshold = kDefaultOiThreshold;
    bool plot = false;
};

struct DecomposeOptions {
    RunOptions run;
    std::filesystem::path input;
};

struct FilterOptions {
    RunOptions run;
    std::filesystem::path input;
    /// Read an existing imfs.csv instead of decomposing `input`.
    std::optional<std::filesystem::path> from_imfs;
    /// Defaults: m_h = min(2, n+1) and m_l = n+1-m_h, a complementary pair.
    std::optional<std::size_t> m_low;
    std::optional<std::size_t> m_high;
    std::size_t window = kThreeMonthWindow;
    double epsilon = kDefaultAsymmetryEpsilon;
};

struct SpectrumOptions {
    RunOptions run;
    std::filesystem::path input;
    std::optional<std::filesystem::path> from_imfs;
};

struct CompareOptions {
    RunOptions run;
    /// The first input is the benchmark for the rolling deviation series.
    std::vector<std::filesystem::path> inputs;
    bool rolling = false;
    std::size_t window = kTwoYearWindow;
    std::size_t step = kDefaultSpectrumStep;
};

/// A decomposition together with the data it came from.
struct DecomposedInput {
    Dataset data;
    EnsembleResult result;
    std::optional<SigmaSelection> selection;
};

/// Runs the configured method (with the sigma grid search when requested).
DecomposedInput decompose_dataset(Dataset data, const RunOptions& opts);

/// Table of asymmetry thresholds reported by `filter`: a fixed grid plus the
/// requested epsilon.
std::vector<double> epsilon_grid(double epsilon);

void run_decompose(const DecomposeOptions& opts, std::ostream& log);
void run_filter(const FilterOptions& opts, std::ostream& log);
void run_spectrum(const SpectrumOptions& opts, std::ostream& log);
void run_compare(const CompareOptions& opts, std::ostream& log);

}  // namespace acemd::app
