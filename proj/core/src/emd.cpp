#include "acemd/emd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acemd/error.hpp"
#include "acemd/spline.hpp"

namespace acemd {

ExtremaSet find_extrema(std::span<const double> x) {
    ExtremaSet out;
    const std::size_t n = x.size();
    if (n < 3) return out;

    std::size_t i = 1;
    while (i + 1 < n) {
        const double v0 = x[i];
        if (x[i + 1] != v0) {  // no plateau
            if (v0 > x[i - 1] && v0 > x[i + 1]) {
                out.maxima.push_back({i, v0});
            } else if (v0 < x[i - 1] && v0 < x[i + 1]) {
                out.minima.push_back({i, v0});
            }
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && x[j + 1] == x[i]) ++j;
        if (j + 1 >= n) break;  // plateau runs into the last sample
        const double left = x[i - 1], right = x[j + 1], v = x[i];
        const std::size_t mid = (i + j) / 2;
        if (v > left && v > right) {
            out.maxima.push_back({mid, v});
        } else if (v < left && v < right) {
            out.minima.push_back({mid, v});
        }
        i = j + 1;
    }
    return out;
}

namespace {

// Zero crossings and max |x| in one pass.
std::size_t crossings_and_peak(std::span<const double> x, double& peak) {
    std::size_t count = 0;
    int prev = 0;
    double p = 0.0;
    for (double v : x) {
        p = std::max(p, std::abs(v));
        const int s = (v > 0.0) - (v < 0.0);
        if (s == 0) continue;
        count += static_cast<std::size_t>(prev != 0 && s != prev);
        prev = s;
    }
    peak = p;
    return count;
}

}  // namespace

std::size_t count_zero_crossings(std::span<const double> x) {
    double peak;
    return crossings_and_peak(x, peak);
}

namespace {

// Envelope of `pts` evaluated on 0..out.size()-1.
void envelope_into(std::span<double> out, std::span<const Extremum> pts, SplineBoundary boundary,
                   bool average = false) {
    const std::size_t length = out.size();
    if (pts.empty() || length == 0) {
        throw Error(Errc::InsufficientExtrema, "envelope needs at least one extremum");
    }
    thread_local std::vector<double> kx, ky;
    kx.clear();
    ky.clear();
    const double last = static_cast<double>(length - 1);
    const std::size_t m = pts.size();
    const std::size_t ext = std::min<std::size_t>(2, m);

    if (boundary == SplineBoundary::mirror) {
        for (std::size_t k = ext; k-- > 0;) {
            const double p = static_cast<double>(pts[k].index);
            if (p > 0.0) {
                kx.push_back(-p);
                ky.push_back(pts[k].value);
            }
        }
    } else if (pts.front().index > 0) {
        kx.push_back(0.0);
        ky.push_back(pts.front().value);
    }

    for (const auto& e : pts) {
        kx.push_back(static_cast<double>(e.index));
        ky.push_back(e.value);
    }

    if (boundary == SplineBoundary::mirror) {
        for (std::size_t k = 0; k < ext; ++k) {
            const double p = static_cast<double>(pts[m - 1 - k].index);
            if (p < last) {
                kx.push_back(2.0 * last - p);
                ky.push_back(pts[m - 1 - k].value);
            }
        }
    } else if (static_cast<double>(pts.back().index) < last) {
        kx.push_back(last);
        ky.push_back(pts.back().value);
    }

    if (kx.size() < 2) throw Error(Errc::InsufficientExtrema, "fewer than two envelope knots");
    natural_spline_grid(kx, ky, out, average);
}

// Mean envelope into `out`.
void mean_envelope_into(std::span<double> out, const ExtremaSet& extrema, SplineBoundary boundary) {
    envelope_into(out, extrema.maxima, boundary);
    envelope_into(out, extrema.minima, boundary, true);
}

}  // namespace

std::vector<double> envelope(std::size_t length, std::span<const Extremum> pts, SplineBoundary boundary) {
    std::vector<double> out(length);
    envelope_into(out, pts, boundary);
    return out;
}

std::vector<double> mean_envelope(std::span<const double> h, const ExtremaSet& extrema,
                                  SplineBoundary boundary) {
    std::vector<double> out(h.size());
    mean_envelope_into(out, extrema, boundary);
    return out;
}

std::vector<double> sift_once(std::span<const double> h, SplineBoundary boundary) {
    const auto extrema = find_extrema(h);
    if (!extrema.siftable()) {
        throw Error(Errc::InsufficientExtrema, "sifting needs at least two maxima and two minima");
    }
    const auto m = mean_envelope(h, extrema, boundary);
    std::vector<double> out(h.begin(), h.end());
    for (std::size_t t = 0; t < out.size(); ++t) out[t] -= m[t];
    return out;
}

ImfCheck check_imf(std::span<const double> h, const ExtremaSet& extrema, std::span<const double> mean_env) {
    ImfCheck c;
    c.num_extrema = extrema.count();
    c.num_zero_crossings = crossings_and_peak(h, c.amplitude_maxabs);
    const std::size_t n = h.size();
    const std::size_t margin = n / 20;
    for (std::size_t t = margin; t < n - margin; ++t) {
        c.envelope_mean_maxabs = std::max(c.envelope_mean_maxabs, std::abs(mean_env[t]));
    }
    return c;
}

namespace {

ImfExtraction sift(std::span<const double> x, ExtremaSet extrema, const EnsembleConfig& cfg) {
    ImfExtraction out;
    out.imf.assign(x.begin(), x.end());
    auto& h = out.imf;
    auto& rep = out.report;
    rep.sd_final = std::numeric_limits<double>::infinity();

    std::vector<double> m(h.size());
    for (;;) {
        mean_envelope_into(m, extrema, cfg.spline_boundary);
        if (rep.iterations_used > 0) {
            rep.imf_check = check_imf(h, extrema, m);
            const bool accepted = rep.sd_final <= cfg.sift_sd_tol && rep.imf_check.counts_ok() &&
                                  rep.imf_check.mean_ok(cfg.imf_mean_tol);
            if (accepted || rep.iterations_used >= cfg.sift_max_iters) break;
        }

        double num = 0.0, den = 0.0;
        for (std::size_t t = 0; t < h.size(); ++t) {
            num += m[t] * m[t];
            den += h[t] * h[t];
            h[t] -= m[t];
        }
        rep.sd_final = den > 0.0 ? num / den : 0.0;
        ++rep.iterations_used;

        extrema = find_extrema(h);
        if (extrema.maxima.empty() || extrema.minima.empty()) {
            // Sifting flattened the candidate; report what is left.
            rep.imf_check.num_extrema = extrema.count();
            rep.imf_check.num_zero_crossings = crossings_and_peak(h, rep.imf_check.amplitude_maxabs);
            break;
        }
    }
    return out;
}

}  // namespace

ImfExtraction extract_imf(std::span<const double> x, const EnsembleConfig& cfg) {
    auto extrema = find_extrema(x);
    if (!extrema.siftable()) {
        throw Error(Errc::InsufficientExtrema, "IMF extraction needs at least two maxima and two minima");
    }
    return sift(x, std::move(extrema), cfg);
}

ModeSet emd_modes(std::span<const double> x, const EnsembleConfig& cfg, std::size_t mode_limit) {
    ModeSet out;
    out.residual.assign(x.begin(), x.end());
    auto& r = out.residual;

    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    const double flat = kFlatTolerance * scale;

    // A residual with one maximum and one minimum is still oscillating;
    // only a residual with at most one interior extremum, or one that is
    // constant up to rounding, is final.
    while (mode_limit == 0 || out.imfs.size() < mode_limit) {
        auto extrema = find_extrema(r);
        if (extrema.count() < 2) break;
        const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
        if (*hi - *lo <= flat) break;

        auto [imf, report] = sift(r, std::move(extrema), cfg);
        double peak = 0.0;
        for (double v : imf) peak = std::max(peak, std::abs(v));
        if (peak <= flat) break;
        for (std::size_t t = 0; t < r.size(); ++t) r[t] -= imf[t];
        out.imfs.push_back(std::move(imf));
        out.reports.push_back(report);
    }
    return out;
}

Decomposition emd(const TimeSeries& x, const EnsembleConfig& cfg) {
    cfg.validate();
    if (x.size() < kMinSeriesLength) {
        throw Error(Errc::TooShort, "decomposition needs at least " + std::to_string(kMinSeriesLength) + " samples");
    }
    auto modes = emd_modes(x.values(), cfg, cfg.max_modes);
    Decomposition d;
    d.source = x;
    d.imfs = std::move(modes.imfs);
    d.residual = std::move(modes.residual);
    d.sift_reports = std::move(modes.reports);
    d.method = Method::emd;
    d.config = cfg;
    return d;
}

}  // namespace acemd
