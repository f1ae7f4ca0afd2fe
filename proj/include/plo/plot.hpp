#pragma once

// Plot-ready panels from summary rows. Each panel fixes a slice of the
// parameter space and lays out one measure against one parameter, with
// one series per value of another.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plo/bench.hpp"

namespace plo {

enum class Measure { PloSetSize, Length, Hvr, Epsilon };
enum class Axis { K, Rho, Mu, M, Algorithm };

struct FigureSpec {
    std::string id;
    Measure measure = Measure::PloSetSize;
    Axis x = Axis::K;
    Axis series = Axis::M;
    int n = 16;
    std::optional<int> m;
    std::optional<int> k;
    std::optional<double> rho;
    std::optional<std::size_t> mu;  // bounded runs restricted to this mu
    bool unbounded_only = false;
    bool log_x = false;
    bool log_y = false;
};

/// fig1a..fig1d (unb PLO-set size), fig2a..fig2f (epsilon, hvr),
/// fig3a..fig3f (length).
const std::vector<FigureSpec>& figure_specs();
const FigureSpec& figure_spec(std::string_view id);

struct PlotPanel {
    std::string data;  // "# x series mean std" then one row per point
    std::string meta;  // single sidecar line
};

/// Rows matching the slice, one per (x, series) pair over the observed
/// values; a missing pair is written with `gap` in place of mean and std,
/// an absent std as `NA`. Unbounded rows on a mu axis are repeated at
/// every observed mu.
PlotPanel build_plot_panel(std::span<const SummaryRow> summary, std::string_view figure_id);

/// Writes <out_dir>/<id>.dat and <out_dir>/<id>.meta.
void emit_plot_data(std::span<const SummaryRow> summary, std::string_view figure_id,
                    const std::filesystem::path& out_dir);

}  // namespace plo
