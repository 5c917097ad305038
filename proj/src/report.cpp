#include "avc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace avc {

namespace {

std::string fmt(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

} // namespace

void print_design_report(std::ostream& out, const FftDesign& d, const GuidelineReport& r) {
    out << "FFT design\n";
    out << "  samples per period (N) : " << d.n_samples << "\n";
    out << "  sample rate (s)        : " << fmt(d.sample_rate, 1) << " Hz\n";
    out << "  period span (T)        : " << fmt(d.period_span * 1e3, 4) << " ms\n";
    out << "  resolution             : " << fmt(d.resolution, 4) << " Hz\n";
    out << "  max frequency          : " << fmt(d.max_freq, 4) << " Hz\n";
    out << "  cycle period (N/s)     : " << fmt(d.cycle_period * 1e3, 4) << " ms\n";
    out << "guidelines\n";
    out << "  resolution <= 40 Hz    : " << to_string(r.resolution.verdict) << " ("
        << fmt(r.resolution.value, 4) << " Hz)\n";
    out << "  period <= 25 ms        : " << to_string(r.period.verdict) << " ("
        << fmt(r.period.value * 1e3, 4) << " ms)\n";
    out << "  max freq >= 2800 Hz    : " << to_string(r.max_freq.verdict) << " ("
        << fmt(r.max_freq.value, 4) << " Hz)\n";
}

void print_design_csv(std::ostream& out, const FftDesign& d, const GuidelineReport& r) {
    out << "field,value,unit\n";
    out << "n_samples," << d.n_samples << ",\n";
    out << "sample_rate," << fmt(d.sample_rate, 6) << ",Hz\n";
    out << "period_span," << fmt(d.period_span * 1e3, 6) << ",ms\n";
    out << "resolution," << fmt(d.resolution, 6) << ",Hz\n";
    out << "max_freq," << fmt(d.max_freq, 6) << ",Hz\n";
    out << "cycle_period," << fmt(d.cycle_period * 1e3, 6) << ",ms\n";
    out << "guideline_resolution," << to_string(r.resolution.verdict) << ",\n";
    out << "guideline_period," << to_string(r.period.verdict) << ",\n";
    out << "guideline_max_freq," << to_string(r.max_freq.verdict) << ",\n";
}

std::string render_trace_svg(const std::vector<TraceRecord>& trace) {
    const int width = 960, height = 480;
    const int ml = 60, mr = 20, mt = 20, mb = 40;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (!trace.empty()) {
        double tmax = trace.back().time_s;
        if (tmax <= 0.0) tmax = 1.0;
        double lo = trace[0].sil_db, hi = trace[0].sil_db;
        for (const auto& r : trace) {
            lo = std::min({lo, r.sil_db, r.norm_gain_db});
            hi = std::max({hi, r.sil_db, r.norm_gain_db});
        }
        if (hi - lo < 1.0) hi = lo + 1.0;
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;

        const double px = (width - ml - mr) / tmax;
        const double py = (height - mt - mb) / (hi - lo);
        auto x = [&](double t) { return ml + t * px; };
        auto y = [&](double v) { return height - mb - (v - lo) * py; };

        auto polyline = [&](const char* color, auto field) {
            svg << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1\" points=\"";
            for (const auto& r : trace) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.2f,%.2f ", x(r.time_s), y(field(r)));
                svg << buf;
            }
            svg << "\"/>\n";
        };
        polyline("red", [](const TraceRecord& r) { return r.sil_db; });
        polyline("black", [](const TraceRecord& r) { return r.norm_gain_db; });

        // axes and ticks
        svg << "<line x1=\"" << ml << "\" y1=\"" << (height - mb) << "\" x2=\"" << (width - mr)
            << "\" y2=\"" << (height - mb) << "\" stroke=\"black\"/>\n";
        svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
            << (height - mb) << "\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 10; ++i) {
            const double t = tmax * i / 10.0;
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "<text x=\"%.1f\" y=\"%d\" font-size=\"11\" text-anchor=\"middle\">%.1f</text>\n",
                          x(t), height - mb + 16, t);
            svg << buf;
        }
        for (int i = 0; i <= 8; ++i) {
            const double v = lo + (hi - lo) * i / 8.0;
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "<text x=\"%d\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">%.1f</text>\n",
                          ml - 6, y(v) + 4, v);
            svg << buf;
        }
        svg << "<text x=\"" << (width / 2) << "\" y=\"" << (height - 6)
            << "\" font-size=\"12\" text-anchor=\"middle\">time (s)</text>\n";
        svg << "<text x=\"" << (width - mr - 150) << "\" y=\"" << (mt + 14)
            << "\" font-size=\"12\" fill=\"red\">SIL S</text>\n";
        svg << "<text x=\"" << (width - mr - 100) << "\" y=\"" << (mt + 14)
            << "\" font-size=\"12\" fill=\"black\">gain A</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace avc
