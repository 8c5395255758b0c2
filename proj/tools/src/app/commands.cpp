#include "app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>

#include "acemd/emd.hpp"
#include "acemd/error.hpp"
#include "app/manifest.hpp"
#include "app/svg.hpp"

namespace acemd::app {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void prepare_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(Errc::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

// JSON has no NaN; undefined statistics become null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Dataset load(const fs::path& path, const IngestOptions& opts, std::ostream& log) {
    auto d = ingest(path, opts);
    d.sha256 = sha256_file(path);
    log << "ingested " << d.dates.size() << " rows from " << path.string() << " (" << format_date(d.dates.front())
        << " to " << format_date(d.dates.back()) << ")\n";
    return d;
}

json run_config(const RunOptions& opts) {
    json sigma_grid = json::array();
    for (double s : opts.sigma_grid) sigma_grid.push_back(s);
    return {
        {"method", to_string(opts.method)},
        {"ensemble", to_json(opts.config)},
        {"auto_sigma", opts.auto_sigma},
        {"sigma_grid", sigma_grid},
        {"oi_threshold", opts.oi_threshold},
        {"column", opts.ingest.column},
        {"date_column", opts.ingest.date_column},
        {"log", opts.ingest.log},
    };
}

json selection_json(const SigmaSelection& sel) {
    json grid = json::array();
    for (const auto& p : sel.grid) {
        json row{{"sigma", p.sigma}, {"ok", p.ok}, {"feasible", p.feasible}};
        if (p.ok) {
            row["orthogonality_index"] = number_or_null(p.orthogonality_index);
            row["separability"] = number_or_null(p.separability);
        } else {
            row["error"] = p.error;
        }
        grid.push_back(row);
    }
    return {{"selected_sigma", sel.sigma}, {"constraint_unmet", sel.constraint_unmet}, {"grid", grid}};
}

// Decomposition from a fresh run or from a stored imfs.csv.
struct Source {
    std::vector<Timestamp> dates;
    Decomposition decomposition;
    bool log_applied = false;
    json input;
};

Source obtain(const fs::path& input, const std::optional<fs::path>& from_imfs, const RunOptions& opts,
              std::ostream& log) {
    Source s;
    if (from_imfs) {
        auto stored = read_imfs_csv(*from_imfs);
        log << "loaded " << stored.decomposition.mode_count() << " IMFs from " << from_imfs->string() << '\n';
        s.dates = std::move(stored.dates);
        s.decomposition = std::move(stored.decomposition);
        s.log_applied = opts.ingest.log;
        s.input = {{"path", from_imfs->string()}, {"sha256", sha256_file(*from_imfs)}, {"rows", s.dates.size()},
                   {"kind", "imfs.csv"}};
        return s;
    }
    auto run = decompose_dataset(load(input, opts.ingest, log), opts);
    log << to_string(opts.method) << ": " << run.result.decomposition.mode_count() << " IMFs\n";
    s.input = input_record(run.data);
    s.dates = std::move(run.data.dates);
    s.log_applied = run.data.log_applied;
    s.decomposition = std::move(run.result.decomposition);
    return s;
}

void write_manifest(const fs::path& dir, const std::string& command, const std::vector<json>& inputs,
                    json config, const RunOptions& opts) {
    write_json(dir / "manifest.json", make_manifest(command, inputs, std::move(config), opts.config.seed));
}

std::vector<std::string> cells_of(std::initializer_list<double> values) {
    std::vector<std::string> out;
    for (double v : values) out.push_back(format_double(v));
    return out;
}

// Triples and central points of one summary, for plots.
std::vector<PlotPoint> central_points(const SpectrumSummary& s) {
    std::vector<PlotPoint> out;
    for (const auto& m : s.modes) out.push_back({m.central.frequency, m.central.energy});
    return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"};

}  // namespace

DecomposedInput decompose_dataset(Dataset data, const RunOptions& opts) {
    DecomposedInput out{std::move(data), {}, {}};
    auto cfg = opts.config;
    cfg.validate();
    const auto& x = out.data.series;
    if (opts.auto_sigma) {
        if (opts.method != Method::ace_emd) {
            throw Error(Errc::InvalidArgument, "--auto-sigma applies to the ace-emd method only");
        }
        out.selection = select_sigma(x, opts.sigma_grid, cfg, opts.oi_threshold);
        cfg.noise_sigma = out.selection->sigma;
    }
    switch (opts.method) {
        case Method::emd: {
            auto d = emd(x, cfg);
            out.result.diagnostics = diagnose(d, 0.0, 1);
            out.result.decomposition = std::move(d);
            break;
        }
        case Method::eemd: out.result = eemd(x, cfg); break;
        case Method::ceemd: out.result = ceemd(x, cfg); break;
        case Method::ace_emd: out.result = ace_emd(x, cfg); break;
    }
    return out;
}

std::vector<double> epsilon_grid(double epsilon) {
    std::set<double> grid{0.01, 0.025, 0.05, 0.1, 0.2};
    grid.insert(epsilon);
    return {grid.begin(), grid.end()};
}

void run_decompose(const DecomposeOptions& opts, std::ostream& log) {
    const auto& dir = opts.run.out_dir;
    prepare_out_dir(dir);
    auto run = decompose_dataset(load(opts.input, opts.run.ingest, log), opts.run);
    const auto& d = run.result.decomposition;
    const auto& diag = run.result.diagnostics;
    log << to_string(opts.run.method) << ": " << d.mode_count() << " IMFs, reconstruction error "
        << d.reconstruction_error() << '\n';

    write_imfs_csv(dir / "imfs.csv", run.data.dates, d);

    json reports = json::array();
    for (const auto& r : d.sift_reports) {
        reports.push_back({{"iterations", r.iterations_used},
                           {"sd_final", number_or_null(r.sd_final)},
                           {"extrema", r.imf_check.num_extrema},
                           {"zero_crossings", r.imf_check.num_zero_crossings},
                           {"envelope_mean_maxabs", r.imf_check.envelope_mean_maxabs},
                           {"amplitude_maxabs", r.imf_check.amplitude_maxabs}});
    }
    json imf_counts = json::array();
    for (const auto& c : d.imfs) {
        imf_counts.push_back({{"extrema", find_extrema(c).count()}, {"zero_crossings", count_zero_crossings(c)}});
    }
    json diagnostics{
        {"method", to_string(d.method)},
        {"modes", d.mode_count()},
        {"orthogonality_index", number_or_null(diag.orthogonality_index)},
        {"separability", number_or_null(diag.separability)},
        {"sigma_used", diag.sigma_used},
        {"ensemble_size_used", diag.ensemble_size_used},
        {"reconstruction_error", d.reconstruction_error()},
        {"sift_reports", reports},
        {"imf_counts", imf_counts},
    };
    if (run.selection) diagnostics["sigma_selection"] = selection_json(*run.selection);
    write_json(dir / "diagnostics.json", diagnostics);
    write_manifest(dir, "decompose", {input_record(run.data)}, run_config(opts.run), opts.run);
}

void run_filter(const FilterOptions& opts, std::ostream& log) {
    const auto& dir = opts.run.out_dir;
    prepare_out_dir(dir);
    const auto src = obtain(opts.input, opts.from_imfs, opts.run, log);
    const auto& d = src.decomposition;
    const std::size_t n = d.mode_count();
    const std::size_t m_h = opts.m_high.value_or(std::min<std::size_t>(2, n + 1));
    const std::size_t m_l = opts.m_low.value_or(std::max<std::size_t>(1, n + 1 - m_h));
    const auto lp = low_pass(d, m_l);
    const auto hp = high_pass(d, m_h);
    log << "filter: n=" << n << " m_l=" << m_l << " m_h=" << m_h << (m_l + m_h == n + 1 ? " (complementary)" : "")
        << '\n';

    const auto x = d.source.values();
    {
        std::vector<std::string> header{"date", "x", "low_pass", "high_pass"};
        if (src.log_applied) header.insert(header.end(), {"price", "low_pass_price"});
        CsvWriter w(dir / "filtered.csv", header);
        for (std::size_t t = 0; t < x.size(); ++t) {
            auto cells = cells_of({x[t], lp.values[t], hp.values[t]});
            cells.insert(cells.begin(), format_date(src.dates[t]));
            if (src.log_applied) {
                cells.push_back(format_double(std::exp(x[t])));
                cells.push_back(format_double(std::exp(lp.values[t])));
            }
            w.row(cells);
        }
        w.close();
    }

    const auto r = log_returns(d.source), r_low = log_returns(lp), r_high = log_returns(hp);
    {
        CsvWriter w(dir / "returns.csv", {"date", "total", "low_pass", "high_pass"});
        for (std::size_t k = 0; k < r.size(); ++k) {
            auto cells = cells_of({r[k], r_low[k], r_high[k]});
            cells.insert(cells.begin(), format_date(src.dates[k + 1]));
            w.row(cells);
        }
        w.close();
    }

    const std::size_t window = opts.window;
    if (window < 2) throw Error(Errc::InvalidArgument, "--window must be >= 2");
    if (r.size() < window) {
        throw Error(Errc::TooShort, std::to_string(r.size()) + " returns are fewer than the window of " +
                                        std::to_string(window));
    }
    const auto vol = rolling_volatility(r.values(), window);
    const auto vol_low = rolling_volatility(r_low.values(), window);
    const auto vol_high = rolling_volatility(r_high.values(), window);
    // Return k sits at sample k+1, so window w ends at sample w + window.
    {
        CsvWriter w(dir / "rolling_volatility.csv", {"date", "total", "low_pass", "high_pass"});
        for (std::size_t k = 0; k < vol.size(); ++k) {
            auto cells = cells_of({vol[k], vol_low[k], vol_high[k]});
            cells.insert(cells.begin(), format_date(src.dates[k + window]));
            w.row(cells);
        }
        w.close();
    }

    const auto cond = rolling_conditional_volatility(r_high.values(), window);
    {
        CsvWriter w(dir / "rolling_conditional.csv", {"date", "sigma_plus", "sigma_minus", "sigma", "valid"});
        for (std::size_t k = 0; k < cond.size(); ++k) {
            const auto& c = cond[k];
            auto cells = cells_of({c.up, c.down, c.total});
            cells.insert(cells.begin(), format_date(src.dates[k + window]));
            cells.push_back(c.valid ? "1" : "0");
            w.row(cells);
        }
        w.close();
    }

    json asym = json::array();
    {
        CsvWriter w(dir / "asymmetry.csv", {"epsilon", "p_plus", "p_minus", "windows"});
        for (double eps : epsilon_grid(opts.epsilon)) {
            AsymmetryFrequencies a{kNaN, kNaN, 0};
            try {
                a = asymmetry_frequencies(cond, eps);
            } catch (const Error& e) {
                if (e.code() != Errc::EmptyInput) throw;
                log << "warning: no valid conditional-volatility window\n";
            }
            auto cells = cells_of({eps, a.p_plus, a.p_minus});
            cells.push_back(std::to_string(a.windows));
            w.row(cells);
            asym.push_back({{"epsilon", eps}, {"p_plus", number_or_null(a.p_plus)},
                            {"p_minus", number_or_null(a.p_minus)}, {"windows", a.windows}});
        }
        w.close();
    }

    const auto full_stats = [](const TimeSeries& ret) {
        json j{{"mean", mean(ret.values())}, {"volatility", volatility(ret.values())}};
        try {
            const auto c = conditional_volatility(ret.values());
            j["sigma_plus"] = c.up;
            j["sigma_minus"] = c.down;
        } catch (const Error& e) {
            if (e.code() != Errc::InsufficientConditionalSamples) throw;
            j["sigma_plus"] = nullptr;
            j["sigma_minus"] = nullptr;
        }
        return j;
    };
    write_json(dir / "filter_summary.json",
               {{"modes", n},
                {"m_low", m_l},
                {"m_high", m_h},
                {"complementary", m_l + m_h == n + 1},
                {"window", window},
                {"epsilon", opts.epsilon},
                {"full_sample", {{"total", full_stats(r)}, {"low_pass", full_stats(r_low)},
                                 {"high_pass", full_stats(r_high)}}},
                {"asymmetry", asym}});

    auto config = run_config(opts.run);
    config["m_low"] = m_l;
    config["m_high"] = m_h;
    config["window"] = window;
    config["epsilon"] = opts.epsilon;
    if (opts.from_imfs) config["from_imfs"] = opts.from_imfs->string();
    write_manifest(dir, "filter", {src.input}, config, opts.run);
}

void run_spectrum(const SpectrumOptions& opts, std::ostream& log) {
    const auto& dir = opts.run.out_dir;
    prepare_out_dir(dir);
    const auto src = obtain(opts.input, opts.from_imfs, opts.run, log);
    const auto& d = src.decomposition;
    const auto triples = hilbert_spectrum(d);
    const auto summary = summarize_spectrum(d);

    {
        CsvWriter w(dir / "spectrum_triples.csv", {"mode", "t", "date", "frequency", "energy"});
        for (const auto& p : triples) {
            w.row({std::to_string(p.mode + 1), std::to_string(p.t), format_date(src.dates[p.t]),
                   format_double(p.frequency), format_double(p.energy)});
        }
        w.close();
    }
    {
        CsvWriter w(dir / "spectrum_modes.csv",
                    {"mode", "central_frequency", "central_energy", "valid_samples", "excluded_energy_samples"});
        for (const auto& m : summary.modes) {
            w.row({std::to_string(m.mode + 1), format_double(m.central.frequency), format_double(m.central.energy),
                   std::to_string(m.central.valid_samples), std::to_string(m.central.excluded_energy_samples)});
        }
        w.close();
    }
    json skipped = json::array();
    for (auto j : summary.skipped_modes) skipped.push_back(j + 1);
    json fit{{"modes", d.mode_count()}, {"modes_used", summary.modes_used()}, {"skipped_modes", skipped}};
    if (summary.fit) {
        fit["alpha"] = summary.fit->alpha;
        fit["intercept"] = summary.fit->intercept;
        fit["r_squared"] = summary.fit->r_squared;
        fit["points"] = summary.fit->points;
        log << "alpha = " << summary.fit->alpha << ", R^2 = " << summary.fit->r_squared << '\n';
    } else {
        fit["alpha"] = nullptr;
        fit["r_squared"] = nullptr;
        log << "warning: fewer than three modes with central points; no power-law fit\n";
    }
    write_json(dir / "spectrum_fit.json", fit);

    if (opts.run.plot) {
        std::vector<PlotLayer> layers;
        for (std::size_t j = 0; j < d.mode_count(); ++j) {
            PlotLayer l{"c_" + std::to_string(j + 1), kPalette[j % std::size(kPalette)], {}, 1.0, 0.25, false};
            for (const auto& p : triples) {
                if (p.mode == j) l.points.push_back({p.frequency, p.energy});
            }
            layers.push_back(std::move(l));
        }
        layers.push_back({"central", "#000000", central_points(summary), 4.0, 1.0, false});
        if (summary.fit && !summary.modes.empty()) {
            double f_lo = summary.modes.front().central.frequency, f_hi = f_lo;
            for (const auto& m : summary.modes) {
                f_lo = std::min(f_lo, m.central.frequency);
                f_hi = std::max(f_hi, m.central.frequency);
            }
            const auto line_at = [&](double f) {
                return PlotPoint{f, std::exp(summary.fit->intercept - summary.fit->alpha * std::log(f))};
            };
            layers.push_back({"fit", "#000000", {line_at(f_lo), line_at(f_hi)}, 0.0, 1.0, true});
        }
        write_loglog_svg(dir / "spectrum.svg", "Hilbert energy-frequency spectrum", "frequency (cycles/obs)",
                         "energy", layers);
    }

    auto config = run_config(opts.run);
    if (opts.from_imfs) config["from_imfs"] = opts.from_imfs->string();
    write_manifest(dir, "spectrum", {src.input}, config, opts.run);
}

void run_compare(const CompareOptions& opts, std::ostream& log) {
    if (opts.inputs.size() < 2) throw Error(Errc::InvalidArgument, "compare needs at least two inputs");
    if (opts.rolling && opts.run.method != Method::ace_emd) {
        throw Error(Errc::InvalidArgument, "--rolling uses ACE-EMD windows; pass --method ace-emd");
    }
    const auto& dir = opts.run.out_dir;
    prepare_out_dir(dir);

    std::vector<Dataset> data;
    std::set<std::string> labels;
    for (const auto& p : opts.inputs) {
        auto d = load(p, opts.run.ingest, log);
        if (!labels.insert(d.label).second) d.label += "_" + std::to_string(data.size() + 1);
        labels.insert(d.label);
        data.push_back(std::move(d));
    }
    std::vector<json> inputs;
    for (const auto& d : data) inputs.push_back(input_record(d));

    // Inner join on dates so every series shares one time base.
    Timestamp lo = data[0].dates.front(), hi = data[0].dates.back();
    for (const auto& d : data) {
        lo = std::max(lo, d.dates.front());
        hi = std::min(hi, d.dates.back());
    }
    if (lo > hi) throw Error(Errc::DateRangeMismatch, "input date ranges do not overlap");
    std::vector<Timestamp> common = data[0].dates;
    for (std::size_t i = 1; i < data.size(); ++i) {
        std::vector<Timestamp> next;
        std::set_intersection(common.begin(), common.end(), data[i].dates.begin(), data[i].dates.end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    if (common.empty()) throw Error(Errc::DateRangeMismatch, "inputs share no dates");
    for (auto& d : data) d = restrict_to(d, common);
    log << "compare: " << common.size() << " common dates (" << format_date(common.front()) << " to "
        << format_date(common.back()) << ")\n";

    // A common mode count keeps the frequency deviation defined.
    auto run = opts.run;
    if (run.config.max_modes == 0) {
        std::size_t n = std::numeric_limits<std::size_t>::max();
        for (const auto& d : data) n = std::min(n, emd(d.series, run.config).mode_count());
        if (n == 0) throw Error(Errc::NoModes, "an input has no oscillatory mode");
        run.config.max_modes = n;
    }
    log << "compare: common mode count " << run.config.max_modes << '\n';

    std::vector<SpectrumSummary> summaries;
    for (auto& d : data) {
        auto res = decompose_dataset(d, run);
        summaries.push_back(summarize_spectrum(res.result.decomposition));
        if (summaries.back().fit) log << d.label << ": alpha = " << summaries.back().fit->alpha << '\n';
    }

    const auto deviation = [&](const SpectrumSummary& a, const SpectrumSummary& b, const std::string& what) {
        try {
            return frequency_deviation(a, b);
        } catch (const Error& e) {
            if (e.code() != Errc::ModeCountMismatch) throw;
            log << "warning: " << what << ": " << e.what() << '\n';
            return kNaN;
        }
    };

    {
        std::vector<std::string> header{"label"};
        for (const auto& d : data) header.push_back(d.label);
        CsvWriter w(dir / "deviation_matrix.csv", header);
        for (std::size_t i = 0; i < data.size(); ++i) {
            std::vector<std::string> cells{data[i].label};
            for (std::size_t k = 0; k < data.size(); ++k) {
                cells.push_back(format_double(deviation(summaries[i], summaries[k], data[i].label + " vs " + data[k].label)));
            }
            w.row(cells);
        }
        w.close();
    }
    {
        CsvWriter w(dir / "compare_modes.csv", {"label", "mode", "central_frequency", "central_energy"});
        for (std::size_t i = 0; i < data.size(); ++i) {
            for (const auto& m : summaries[i].modes) {
                w.row({data[i].label, std::to_string(m.mode + 1), format_double(m.central.frequency),
                       format_double(m.central.energy)});
            }
        }
        w.close();
    }
    std::vector<PlotLayer> pair_layers;
    {
        CsvWriter w(dir / "compare_pairs.csv", {"label_a", "label_b", "mode", "frequency_a", "frequency_b"});
        for (std::size_t i = 0; i < data.size(); ++i) {
            for (std::size_t k = i + 1; k < data.size(); ++k) {
                PlotLayer layer{data[i].label + " vs " + data[k].label, kPalette[(pair_layers.size()) % std::size(kPalette)],
                                {}, 4.0, 0.9, false};
                for (const auto& a : summaries[i].modes) {
                    for (const auto& b : summaries[k].modes) {
                        if (a.mode != b.mode) continue;
                        w.row({data[i].label, data[k].label, std::to_string(a.mode + 1),
                               format_double(a.central.frequency), format_double(b.central.frequency)});
                        layer.points.push_back({a.central.frequency, b.central.frequency});
                    }
                }
                pair_layers.push_back(std::move(layer));
            }
        }
        w.close();
    }
    if (opts.run.plot) {
        double f_lo = 1.0, f_hi = 0.0;
        for (const auto& s : summaries) {
            for (const auto& m : s.modes) {
                f_lo = std::min(f_lo, m.central.frequency);
                f_hi = std::max(f_hi, m.central.frequency);
            }
        }
        if (f_hi > 0) pair_layers.push_back({"y = x", "#777777", {{f_lo, f_lo}, {f_hi, f_hi}}, 0.0, 1.0, true});
        write_loglog_svg(dir / "compare.svg", "Central mode frequencies", "frequency, first input",
                         "frequency, second input", pair_layers);
    }

    auto rolling_config = run.config;
    if (opts.rolling) {
        // Unless --modes was given, windows use the smallest zero-noise mode
        // count found in any window, which is usually below the full-sample
        // count.
        if (opts.run.config.max_modes == 0) {
            if (opts.window < kMinSpectrumWindow || opts.step < 1) {
                throw Error(Errc::InvalidArgument, "rolling window must be >= " + std::to_string(kMinSpectrumWindow) +
                                                       " and step >= 1");
            }
            if (common.size() < opts.window) {
                throw Error(Errc::TooShort, std::to_string(common.size()) + " common dates are fewer than the window");
            }
            auto probe = opts.run.config;
            std::size_t n = rolling_config.max_modes;
            for (const auto& d : data) {
                const auto v = d.series.values();
                for (std::size_t start = 0; start + opts.window <= v.size(); start += opts.step) {
                    const auto slice = v.subspan(start, opts.window);
                    n = std::min(n, emd(TimeSeries(std::vector<double>(slice.begin(), slice.end())), probe).mode_count());
                }
            }
            rolling_config.max_modes = std::max<std::size_t>(n, 1);
        }
        log << "compare: rolling windows use " << rolling_config.max_modes << " modes\n";
        std::vector<std::vector<RollingSpectrumPoint>> rolls;
        for (const auto& d : data) rolls.push_back(rolling_spectrum(d.series, opts.window, opts.step, rolling_config));
        CsvWriter w(dir / "rolling_compare.csv",
                    {"window_index", "date", "label", "alpha", "r_squared", "deviation_from_benchmark"});
        std::size_t failures = 0;
        for (std::size_t win = 0; win < rolls[0].size(); ++win) {
            const auto& bench = rolls[0][win];
            for (std::size_t i = 0; i < data.size(); ++i) {
                const auto& p = rolls[i][win];
                double alpha = kNaN, r2 = kNaN, dev = kNaN;
                if (p.error.empty()) {
                    if (p.summary.fit) alpha = p.summary.fit->alpha, r2 = p.summary.fit->r_squared;
                    if (bench.error.empty()) {
                        try {
                            dev = frequency_deviation(p.summary, bench.summary);
                        } catch (const Error& e) {
                            if (e.code() != Errc::ModeCountMismatch) throw;
                        }
                    }
                } else {
                    ++failures;
                }
                auto cells = cells_of({alpha, r2, dev});
                cells.insert(cells.begin(), {std::to_string(win), format_date(common[p.window_end]), data[i].label});
                w.row(cells);
            }
        }
        w.close();
        if (failures) log << "warning: " << failures << " rolling windows failed to decompose\n";
    }

    auto config = run_config(run);
    config["rolling"] = opts.rolling;
    config["window"] = opts.window;
    config["step"] = opts.step;
    config["common_dates"] = common.size();
    if (opts.rolling) config["rolling_max_modes"] = rolling_config.max_modes;
    write_manifest(dir, "compare", inputs, config, run);
}

}  // namespace acemd::app
