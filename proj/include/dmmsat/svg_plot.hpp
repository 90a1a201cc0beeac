#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dmmsat {

/// Standalone SVG renderers for the four figure kinds. Output bytes are a
/// deterministic function of the inputs.

struct HistogramPlotRow {
    double bin_center = 0.0;
    double count = 0.0;
    std::optional<double> fitted;
};

std::string svg_histogram(const std::vector<HistogramPlotRow>& rows,
                          const std::string& x_label = "tts",
                          const std::string& y_label = "count");

std::string svg_trajectory(const std::vector<double>& times,
                           const std::vector<std::string>& names,
                           const std::vector<std::vector<double>>& series);

struct SweepPlotRow {
    double v_thr = 0.0;
    double v_jump = 0.0;
    double nmtts = 0.0;
};

/// Overlay points for the dashed model curve: (x, 1 - v_jump/2) per row with
/// v_jump in [0,2], where x is the sweep axis (v_thr unless all rows share
/// one v_thr value, then v_jump).
std::vector<std::pair<double, double>> sweep_model_points(
    const std::vector<SweepPlotRow>& rows);

std::string svg_sweep(const std::vector<SweepPlotRow>& rows);

struct ScalingPlotRow {
    double n = 0.0;
    std::optional<double> median_mod;
    std::optional<double> median_base;
};

std::string svg_scaling(const std::vector<ScalingPlotRow>& rows);

} // namespace dmmsat
