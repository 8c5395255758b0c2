// acemd command-line front end. Data goes to files under --out-dir;
// progress and errors go to stderr. Exit status is 0 on success and the
// numeric acemd::Errc value on a library error.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "acemd/error.hpp"
#include "acemd/version.hpp"
#include "app/commands.hpp"

namespace {

using acemd::app::RunOptions;

const std::map<std::string, acemd::Method> kMethods{
    {"emd", acemd::Method::emd},
    {"eemd", acemd::Method::eemd},
    {"ceemd", acemd::Method::ceemd},
    {"ace-emd", acemd::Method::ace_emd},
};

const std::map<std::string, acemd::SplineBoundary> kBoundaries{
    {"mirror", acemd::SplineBoundary::mirror},
    {"clamp", acemd::SplineBoundary::clamp},
};

const std::map<std::string, acemd::NoiseFamily> kNoise{
    {"gaussian", acemd::NoiseFamily::gaussian},
    {"uniform", acemd::NoiseFamily::uniform},
};

// Enum-valued flags are read as names and resolved after parsing.
struct EnumFlags {
    std::string method = "ace-emd";
    std::string boundary = "mirror";
    std::string noise = "gaussian";

    void apply(RunOptions& o) const {
        o.method = kMethods.at(method);
        o.config.spline_boundary = kBoundaries.at(boundary);
        o.config.noise = kNoise.at(noise);
    }
};

template <class Map>
std::vector<std::string> keys(const Map& m) {
    std::vector<std::string> out;
    for (const auto& [k, v] : m) out.push_back(k);
    return out;
}

void add_run_options(CLI::App* cmd, RunOptions& o, EnumFlags& e) {
    cmd->add_option("--column", o.ingest.column, "Numeric column to analyse")->capture_default_str();
    cmd->add_option("--date-column", o.ingest.date_column, "ISO-8601 date column")->capture_default_str();
    cmd->add_flag("--log,!--no-log", o.ingest.log, "Take the natural log of the column (default on)");
    cmd->add_option("--out-dir", o.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--method", e.method, "Decomposition method")
        ->check(CLI::IsMember(keys(kMethods)))
        ->capture_default_str();
    cmd->add_option("--modes", o.config.max_modes, "Number of IMFs; 0 sifts until the residual is nonoscillatory")
        ->capture_default_str();
    cmd->add_option("--ensemble-size", o.config.ensemble_size, "Noise realizations N")->capture_default_str();
    auto* sigma = cmd->add_option("--sigma", o.config.noise_sigma, "Relative noise level")->capture_default_str();
    auto* auto_sigma = cmd->add_flag("--auto-sigma", o.auto_sigma,
                                     "Pick sigma by minimal separability subject to |OI| < --oi-threshold");
    sigma->excludes(auto_sigma);
    cmd->add_option("--sigma-grid", o.sigma_grid, "Candidate sigmas for --auto-sigma")->capture_default_str();
    cmd->add_option("--oi-threshold", o.oi_threshold, "Orthogonality constraint for --auto-sigma")
        ->capture_default_str();
    cmd->add_option("--seed", o.config.seed, "Base RNG seed")->capture_default_str();
    cmd->add_option("--threads", o.config.threads, "Worker threads; 0 uses all cores. Results do not depend on it")
        ->capture_default_str();
    cmd->add_option("--sift-max-iters", o.config.sift_max_iters)->capture_default_str();
    cmd->add_option("--sift-sd-tol", o.config.sift_sd_tol)->capture_default_str();
    cmd->add_option("--imf-mean-tol", o.config.imf_mean_tol)->capture_default_str();
    cmd->add_option("--spline-boundary", e.boundary)->check(CLI::IsMember(keys(kBoundaries)))->capture_default_str();
    cmd->add_option("--noise", e.noise, "Noise family")->check(CLI::IsMember(keys(kNoise)))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive complementary ensemble EMD for financial time series"};
    app.set_version_flag("--version", std::string(acemd::kVersion));
    app.require_subcommand(1);

    acemd::app::DecomposeOptions dec;
    auto* c_dec = app.add_subcommand("decompose", "Write IMFs, diagnostics and a run manifest");
    EnumFlags dec_enums;
    add_run_options(c_dec, dec.run, dec_enums);
    c_dec->add_option("--input", dec.input, "Input CSV")->required()->check(CLI::ExistingFile);

    acemd::app::FilterOptions fil;
    std::size_t m_low = 0, m_high = 0;
    auto* c_fil = app.add_subcommand("filter", "Low/high-pass series, volatilities and asymmetry frequencies");
    EnumFlags fil_enums;
    add_run_options(c_fil, fil.run, fil_enums);
    auto* fil_in = c_fil->add_option("--input", fil.input, "Input CSV")->check(CLI::ExistingFile);
    auto* fil_imfs = c_fil->add_option("--from-imfs", fil.from_imfs, "Reuse an imfs.csv from decompose")
                         ->check(CLI::ExistingFile);
    fil_in->excludes(fil_imfs);
    auto* o_ml = c_fil->add_option("--m-low", m_low, "Components kept by the low-pass filter");
    auto* o_mh = c_fil->add_option("--m-high", m_high, "IMFs summed by the high-pass filter");
    c_fil->add_option("--window", fil.window, "Rolling window in observations")->capture_default_str();
    c_fil->add_option("--epsilon", fil.epsilon, "Volatility-asymmetry threshold")->capture_default_str();

    acemd::app::SpectrumOptions spe;
    auto* c_spe = app.add_subcommand("spectrum", "Hilbert spectrum, central points and the power exponent");
    EnumFlags spe_enums;
    add_run_options(c_spe, spe.run, spe_enums);
    auto* spe_in = c_spe->add_option("--input", spe.input, "Input CSV")->check(CLI::ExistingFile);
    auto* spe_imfs = c_spe->add_option("--from-imfs", spe.from_imfs, "Reuse an imfs.csv from decompose")
                         ->check(CLI::ExistingFile);
    spe_in->excludes(spe_imfs);
    c_spe->add_flag("--plot", spe.run.plot, "Also write spectrum.svg");

    acemd::app::CompareOptions cmp;
    auto* c_cmp = app.add_subcommand("compare", "Frequency deviation between assets");
    EnumFlags cmp_enums;
    add_run_options(c_cmp, cmp.run, cmp_enums);
    c_cmp->add_option("--input", cmp.inputs, "Input CSVs; the first is the benchmark")
        ->required()
        ->check(CLI::ExistingFile);
    c_cmp->add_flag("--rolling", cmp.rolling, "Also write rolling alpha and deviation from the benchmark");
    c_cmp->add_option("--window", cmp.window, "Rolling window in observations")->capture_default_str();
    c_cmp->add_option("--step", cmp.step, "Rolling step in observations")->capture_default_str();
    c_cmp->add_flag("--plot", cmp.run.plot, "Also write compare.svg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    dec_enums.apply(dec.run);
    fil_enums.apply(fil.run);
    spe_enums.apply(spe.run);
    cmp_enums.apply(cmp.run);

    try {
        if (*c_dec) {
            acemd::app::run_decompose(dec, std::cerr);
        } else if (*c_fil) {
            if (!*fil_in && !*fil_imfs) throw acemd::Error(acemd::Errc::InvalidArgument, "filter needs --input or --from-imfs");
            if (*o_ml) fil.m_low = m_low;
            if (*o_mh) fil.m_high = m_high;
            acemd::app::run_filter(fil, std::cerr);
        } else if (*c_spe) {
            if (!*spe_in && !*spe_imfs) throw acemd::Error(acemd::Errc::InvalidArgument, "spectrum needs --input or --from-imfs");
            acemd::app::run_spectrum(spe, std::cerr);
        } else if (*c_cmp) {
            acemd::app::run_compare(cmp, std::cerr);
        }
    } catch (const acemd::Error& e) {
        std::cerr << "acemd: " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "acemd: unexpected error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
