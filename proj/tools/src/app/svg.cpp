#include "app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "app/csv_io.hpp"

namespace acemd::app {
namespace {

constexpr double kWidth = 720, kHeight = 540;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_loglog_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                      const std::string& y_label, std::span<const PlotLayer> layers) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& layer : layers) {
        for (const auto& p : layer.points) {
            if (!(p.x > 0 && p.y > 0) || !std::isfinite(p.x) || !std::isfinite(p.y)) continue;
            x0 = std::min(x0, std::log10(p.x));
            x1 = std::max(x1, std::log10(p.x));
            y0 = std::min(y0, std::log10(p.y));
            y1 = std::max(y1, std::log10(p.y));
        }
    }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    x0 = std::floor(x0), x1 = std::max(std::ceil(x1), x0 + 1);
    y0 = std::floor(y0), y1 = std::max(std::ceil(y1), y0 + 1);

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    const auto sx = [&](double v) { return kLeft + (std::log10(v) - x0) / (x1 - x0) * pw; };
    const auto sy = [&](double v) { return kTop + ph - (std::log10(v) - y0) / (y1 - y0) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(title) << "</text>\n";
    for (int d = int(x0); d <= int(x1); ++d) {
        const double px = kLeft + (d - x0) / (x1 - x0) * pw;
        o << "<line x1=\"" << num(px) << "\" y1=\"" << kTop << "\" x2=\"" << num(px) << "\" y2=\"" << kTop + ph
          << "\" stroke=\"#ddd\"/>\n";
        o << "<text x=\"" << num(px) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">1e" << d
          << "</text>\n";
    }
    for (int d = int(y0); d <= int(y1); ++d) {
        const double py = kTop + ph - (d - y0) / (y1 - y0) * ph;
        o << "<line x1=\"" << kLeft << "\" y1=\"" << num(py) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << num(py)
          << "\" stroke=\"#ddd\"/>\n";
        o << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">1e" << d
          << "</text>\n";
    }
    o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
    o << "<text transform=\"translate(22," << num(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(y_label) << "</text>\n";

    for (const auto& layer : layers) {
        o << "<g fill=\"" << layer.color << "\" stroke=\"" << layer.color << "\" opacity=\"" << num(layer.opacity)
          << "\">\n";
        if (layer.as_line) {
            o << "<polyline fill=\"none\" stroke-width=\"1.5\" points=\"";
            for (const auto& p : layer.points) {
                if (p.x > 0 && p.y > 0) o << num(sx(p.x)) << ',' << num(sy(p.y)) << ' ';
            }
            o << "\"/>\n";
        } else {
            for (const auto& p : layer.points) {
                if (!(p.x > 0 && p.y > 0)) continue;
                o << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y)) << "\" r=\""
                  << num(layer.radius) << "\" stroke=\"none\"/>\n";
            }
        }
        o << "</g>\n";
    }
    double ly = kTop + 10;
    for (const auto& layer : layers) {
        if (layer.label.empty()) continue;
        o << "<rect x=\"" << kLeft + pw + 14 << "\" y=\"" << num(ly - 8) << "\" width=\"10\" height=\"10\" fill=\""
          << layer.color << "\"/>\n";
        o << "<text x=\"" << kLeft + pw + 30 << "\" y=\"" << num(ly + 1) << "\">" << escape(layer.label)
          << "</text>\n";
        ly += 18;
    }
    o << "</svg>\n";
    write_text(path, o.str());
}

}  // namespace acemd::app
