#include "dmmsat/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dmmsat {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 620, kTop = 20, kBottom = 370;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    double px_lo = 0.0, px_hi = 1.0;
    bool log_scale = false;

    double to_px(double v) const {
        double a = v, l = lo, h = hi;
        if (log_scale) {
            a = std::log10(v);
            l = std::log10(lo);
            h = std::log10(hi);
        }
        return px_lo + (a - l) / (h - l) * (px_hi - px_lo);
    }
    double tick_value(int i, int n) const {
        if (log_scale) {
            const double l = std::log10(lo), h = std::log10(hi);
            return std::pow(10.0, l + (h - l) * i / (n - 1));
        }
        return lo + (hi - lo) * i / (n - 1);
    }
};

void open_svg(std::ostringstream& out) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& out, const Axis& x, const Axis& y,
          const std::string& x_label, const std::string& y_label) {
    out << "<g stroke=\"black\" fill=\"none\">\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
        << "\" y2=\"" << kBottom << "\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kBottom << "\"/>\n</g>\n";
    constexpr int kTicks = 5;
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    for (int i = 0; i < kTicks; ++i) {
        const double xv = x.tick_value(i, kTicks);
        const double px = x.to_px(xv);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << kBottom << "\" x2=\""
            << fmt(px) << "\" y2=\"" << kBottom + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(px) << "\" y=\"" << kBottom + 18
            << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
        const double yv = y.tick_value(i, kTicks);
        const double py = y.to_px(yv);
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(py) << "\" x2=\""
            << kLeft << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    }
    out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n"
        << "<text x=\"16\" y=\"" << (kTop + kBottom) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (kTop + kBottom) / 2 << ")\">" << y_label << "</text>\n</g>\n";
}

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

} // namespace

std::string svg_histogram(const std::vector<HistogramPlotRow>& rows,
                          const std::string& x_label,
                          const std::string& y_label) {
    if (rows.empty()) throw std::invalid_argument("histogram plot needs rows");
    double w = 1.0;
    if (rows.size() > 1) w = rows[1].bin_center - rows[0].bin_center;
    if (!(w > 0.0)) w = 1.0;

    Axis x{rows.front().bin_center - 0.5 * w, rows.back().bin_center + 0.5 * w,
           kLeft, kRight, false};
    double ymax = 1.0;
    for (const auto& r : rows) {
        ymax = std::max(ymax, r.count);
        if (r.fitted) ymax = std::max(ymax, *r.fitted);
    }
    Axis y{0.0, 1.05 * ymax, kBottom, kTop, false};

    std::ostringstream out;
    open_svg(out);
    axes(out, x, y, x_label, y_label);
    for (const auto& r : rows) {
        const double x0 = x.to_px(r.bin_center - 0.5 * w);
        const double x1 = x.to_px(r.bin_center + 0.5 * w);
        const double py = y.to_px(r.count);
        out << "<rect class=\"bar\" x=\"" << fmt(x0) << "\" y=\"" << fmt(py)
            << "\" width=\"" << fmt(x1 - x0) << "\" height=\""
            << fmt(kBottom - py)
            << "\" fill=\"#1f77b4\" fill-opacity=\"0.7\" stroke=\"#1f77b4\"/>\n";
    }
    bool any_fit = false;
    std::ostringstream line;
    for (const auto& r : rows) {
        if (!r.fitted) continue;
        if (any_fit) line << ' ';
        line << fmt(x.to_px(r.bin_center)) << ',' << fmt(y.to_px(*r.fitted));
        any_fit = true;
    }
    if (any_fit)
        out << "<polyline class=\"fit\" points=\"" << line.str()
            << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
    out << "</svg>\n";
    return out.str();
}

std::string svg_trajectory(const std::vector<double>& times,
                           const std::vector<std::string>& names,
                           const std::vector<std::vector<double>>& series) {
    if (times.empty() || series.empty())
        throw std::invalid_argument("trajectory plot needs samples");
    if (names.size() != series.size())
        throw std::invalid_argument("one name per series required");

    Axis x{times.front(), std::max(times.back(), times.front() + 1e-9), kLeft,
           kRight, false};
    Axis y{-1.1, 1.1, kBottom, kTop, false};

    std::ostringstream out;
    open_svg(out);
    axes(out, x, y, "t", "v");
    for (std::size_t s = 0; s < series.size(); ++s) {
        if (series[s].size() != times.size())
            throw std::invalid_argument("series length mismatch");
        out << "<polyline class=\"trace\" data-name=\"" << names[s]
            << "\" points=\"";
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (i) out << ' ';
            out << fmt(x.to_px(times[i])) << ',' << fmt(y.to_px(series[s][i]));
        }
        out << "\" fill=\"none\" stroke=\"" << kSeriesColors[s % 8]
            << "\" stroke-width=\"1\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::vector<std::pair<double, double>> sweep_model_points(
    const std::vector<SweepPlotRow>& rows) {
    bool same_thr = true;
    for (const auto& r : rows) same_thr = same_thr && r.v_thr == rows[0].v_thr;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) {
        if (r.v_jump < 0.0 || r.v_jump > 2.0) continue;
        pts.emplace_back(same_thr ? r.v_jump : r.v_thr, 1.0 - r.v_jump / 2.0);
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::string svg_sweep(const std::vector<SweepPlotRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("sweep plot needs rows");
    bool same_thr = true;
    for (const auto& r : rows) same_thr = same_thr && r.v_thr == rows[0].v_thr;
    const std::string x_label = same_thr ? "V_jump" : "V_thr";

    double xmin = 1e300, xmax = -1e300, ymax = 1.0;
    for (const auto& r : rows) {
        const double xv = same_thr ? r.v_jump : r.v_thr;
        xmin = std::min(xmin, xv);
        xmax = std::max(xmax, xv);
        ymax = std::max(ymax, r.nmtts);
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    Axis x{xmin, xmax, kLeft, kRight, false};
    Axis y{0.0, 1.05 * ymax, kBottom, kTop, false};

    std::ostringstream out;
    open_svg(out);
    axes(out, x, y, x_label, "NMTTS");

    const auto model = sweep_model_points(rows);
    if (model.size() >= 2) {
        out << "<polyline class=\"model\" stroke-dasharray=\"6 4\" points=\"";
        for (std::size_t i = 0; i < model.size(); ++i) {
            if (i) out << ' ';
            out << fmt(x.to_px(model[i].first)) << ','
                << fmt(y.to_px(model[i].second));
        }
        out << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& r : rows)
        out << "<circle class=\"point\" cx=\""
            << fmt(x.to_px(same_thr ? r.v_jump : r.v_thr)) << "\" cy=\""
            << fmt(y.to_px(r.nmtts)) << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
    out << "</svg>\n";
    return out.str();
}

std::string svg_scaling(const std::vector<ScalingPlotRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("scaling plot needs rows");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& r : rows) {
        if (!(r.n > 0.0)) throw std::invalid_argument("scaling plot needs N > 0");
        xmin = std::min(xmin, r.n);
        xmax = std::max(xmax, r.n);
        for (const auto& m : {r.median_mod, r.median_base})
            if (m && *m > 0.0) {
                ymin = std::min(ymin, *m);
                ymax = std::max(ymax, *m);
            }
    }
    if (ymax < ymin) throw std::invalid_argument("scaling plot needs medians");
    if (xmax <= xmin) xmax = xmin * 10.0;
    if (ymax <= ymin) ymax = ymin * 10.0;
    Axis x{xmin, xmax, kLeft, kRight, true};
    Axis y{ymin / 1.2, ymax * 1.2, kBottom, kTop, true};

    std::ostringstream out;
    open_svg(out);
    axes(out, x, y, "N", "median TTS");
    const char* classes[2] = {"mod", "base"};
    const char* colors[2] = {"#2ca02c", "#1f77b4"};
    for (int which = 0; which < 2; ++which) {
        std::ostringstream line;
        bool any = false;
        for (const auto& r : rows) {
            const auto& m = which == 0 ? r.median_mod : r.median_base;
            if (!m || !(*m > 0.0)) continue;
            if (any) line << ' ';
            line << fmt(x.to_px(r.n)) << ',' << fmt(y.to_px(*m));
            any = true;
            out << "<circle class=\"" << classes[which] << "\" cx=\""
                << fmt(x.to_px(r.n)) << "\" cy=\"" << fmt(y.to_px(*m))
                << "\" r=\"4\" fill=\"" << colors[which] << "\"/>\n";
        }
        if (any)
            out << "<polyline class=\"" << classes[which] << "-line\" points=\""
                << line.str() << "\" fill=\"none\" stroke=\"" << colors[which]
                << "\" stroke-width=\"1\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace dmmsat
