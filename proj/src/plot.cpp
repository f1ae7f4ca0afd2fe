#include "plo/plot.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace plo {

namespace {

FigureSpec make_spec(std::string id, Measure measure, Axis x, Axis series) {
    FigureSpec f;
    f.id = std::move(id);
    f.measure = measure;
    f.x = x;
    f.series = series;
    return f;
}

FigureSpec unb_size(std::string id, Axis x, Axis series, std::optional<int> m, std::optional<int> k,
                    std::optional<double> rho) {
    FigureSpec f = make_spec(std::move(id), Measure::PloSetSize, x, series);
    f.m = m;
    f.k = k;
    f.rho = rho;
    f.unbounded_only = true;
    f.log_y = true;
    return f;
}

FigureSpec versus_mu(std::string id, Measure measure, int m, double rho) {
    FigureSpec f = make_spec(std::move(id), measure, Axis::Mu, Axis::Algorithm);
    f.m = m;
    f.k = 8;
    f.rho = rho;
    f.log_x = true;
    f.log_y = measure == Measure::Length;
    return f;
}

FigureSpec versus_k(std::string id, Measure measure, int m) {
    FigureSpec f = make_spec(std::move(id), measure, Axis::K, Axis::Algorithm);
    f.m = m;
    f.rho = 0.0;
    f.mu = 10;
    f.log_y = measure == Measure::Length;
    return f;
}

std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::PloSetSize: return "plo_set_size";
        case Measure::Length: return "length";
        case Measure::Hvr: return "hvr";
        case Measure::Epsilon: return "epsilon";
    }
    return "?";
}

std::string_view axis_name(Axis a) {
    switch (a) {
        case Axis::K: return "k";
        case Axis::Rho: return "rho";
        case Axis::Mu: return "mu";
        case Axis::M: return "m";
        case Axis::Algorithm: return "archiver";
    }
    return "?";
}

const Statistic& measure_of(const SummaryRow& row, Measure m) {
    switch (m) {
        case Measure::PloSetSize: return row.plo_set_size;
        case Measure::Length: return row.length;
        case Measure::Hvr: return row.hvr;
        case Measure::Epsilon: return row.epsilon;
    }
    throw std::logic_error("unknown measure");
}

// Numeric axis value; archivers order as unb < hva < mga.
double axis_value(const SummaryRow& row, Axis a) {
    switch (a) {
        case Axis::K: return row.k;
        case Axis::Rho: return row.rho;
        case Axis::Mu: return row.config.mu ? static_cast<double>(*row.config.mu) : 0.0;
        case Axis::M: return row.m;
        case Axis::Algorithm: return static_cast<double>(row.config.kind);
    }
    return 0.0;
}

std::string series_label(Axis a, double value) {
    switch (a) {
        case Axis::Algorithm: return std::string(archiver_name(static_cast<ArchiverKind>(static_cast<int>(value))));
        case Axis::M: return "m=" + std::to_string(static_cast<int>(value));
        case Axis::K: return "k=" + std::to_string(static_cast<int>(value));
        case Axis::Mu: return "mu=" + std::to_string(static_cast<int>(value));
        case Axis::Rho: return "rho=" + format_real(value);
    }
    return "?";
}

std::string x_label(Axis a, double value) {
    if (a == Axis::Rho) return format_real(value);
    return std::to_string(static_cast<long long>(value));
}

bool in_slice(const SummaryRow& row, const FigureSpec& f) {
    if (row.n != f.n) return false;
    if (f.m && row.m != *f.m) return false;
    if (f.k && row.k != *f.k) return false;
    if (f.rho && row.rho != *f.rho) return false;
    const bool unbounded = row.config.kind == ArchiverKind::Unbounded;
    if (f.unbounded_only && !unbounded) return false;
    if (f.mu && !unbounded && row.config.mu != f.mu) return false;
    return true;
}

std::string slice_text(const FigureSpec& f) {
    std::string out = "n=" + std::to_string(f.n);
    if (f.m) out += ",m=" + std::to_string(*f.m);
    if (f.k) out += ",k=" + std::to_string(*f.k);
    if (f.rho) out += ",rho=" + format_real(*f.rho);
    if (f.mu) out += ",mu=" + std::to_string(*f.mu);
    if (f.unbounded_only) out += ",archiver=unb";
    return out;
}

}  // namespace

const std::vector<FigureSpec>& figure_specs() {
    static const std::vector<FigureSpec> specs = [] {
        std::vector<FigureSpec> s;
        s.push_back(unb_size("fig1a", Axis::K, Axis::M, std::nullopt, std::nullopt, -0.2));
        s.push_back(unb_size("fig1b", Axis::K, Axis::M, std::nullopt, std::nullopt, 0.7));
        s.push_back(unb_size("fig1c", Axis::Rho, Axis::M, std::nullopt, 4, std::nullopt));
        s.push_back(unb_size("fig1d", Axis::Rho, Axis::K, 5, std::nullopt, std::nullopt));
        s.push_back(versus_mu("fig2a", Measure::Epsilon, 5, -0.2));
        s.push_back(versus_mu("fig2b", Measure::Epsilon, 5, 0.0));
        s.push_back(versus_mu("fig2c", Measure::Hvr, 5, -0.2));
        s.push_back(versus_mu("fig2d", Measure::Hvr, 5, 0.0));
        s.push_back(versus_k("fig2e", Measure::Hvr, 3));
        s.push_back(versus_k("fig2f", Measure::Hvr, 5));
        s.push_back(versus_mu("fig3a", Measure::Length, 3, -0.2));
        s.push_back(versus_mu("fig3b", Measure::Length, 3, 0.0));
        s.push_back(versus_mu("fig3c", Measure::Length, 5, -0.2));
        s.push_back(versus_mu("fig3d", Measure::Length, 5, 0.0));
        s.push_back(versus_k("fig3e", Measure::Length, 3));
        s.push_back(versus_k("fig3f", Measure::Length, 5));
        return s;
    }();
    return specs;
}

const FigureSpec& figure_spec(std::string_view id) {
    for (const auto& f : figure_specs()) {
        if (f.id == id) return f;
    }
    throw std::invalid_argument("unknown figure '" + std::string(id) + "' (expected fig1a..fig1d, fig2a..fig3f)");
}

PlotPanel build_plot_panel(std::span<const SummaryRow> summary, std::string_view figure_id) {
    const FigureSpec& f = figure_spec(figure_id);

    std::vector<const SummaryRow*> rows;
    for (const auto& row : summary) {
        if (in_slice(row, f)) rows.push_back(&row);
    }

    std::set<double> xs;
    std::set<double> series;
    for (const SummaryRow* row : rows) {
        const bool floating = f.x == Axis::Mu && row->config.kind == ArchiverKind::Unbounded;
        if (!floating) xs.insert(axis_value(*row, f.x));
        series.insert(axis_value(*row, f.series));
    }
    std::map<std::pair<double, double>, const SummaryRow*> cells;
    for (const SummaryRow* row : rows) {
        const double s = axis_value(*row, f.series);
        if (f.x == Axis::Mu && row->config.kind == ArchiverKind::Unbounded) {
            for (double x : xs) cells[{x, s}] = row;
        } else {
            cells[{axis_value(*row, f.x), s}] = row;
        }
    }

    std::ostringstream data;
    data << "# x series mean std\n";
    for (double x : xs) {
        for (double s : series) {
            data << x_label(f.x, x) << ' ' << series_label(f.series, s) << ' ';
            const auto it = cells.find({x, s});
            if (it == cells.end()) {
                data << "gap gap\n";
                continue;
            }
            const Statistic& stat = measure_of(*it->second, f.measure);
            data << format_real(stat.mean) << ' ' << (stat.stddev ? format_real(*stat.stddev) : "NA") << '\n';
        }
    }

    std::ostringstream meta;
    meta << "figure=" << f.id << " measure=" << measure_name(f.measure) << " x=" << axis_name(f.x)
         << " series=" << axis_name(f.series) << " slice=" << slice_text(f) << " logx=" << (f.log_x ? 1 : 0)
         << " logy=" << (f.log_y ? 1 : 0) << '\n';
    return {data.str(), meta.str()};
}

void emit_plot_data(std::span<const SummaryRow> summary, std::string_view figure_id,
                    const std::filesystem::path& out_dir) {
    const PlotPanel panel = build_plot_panel(summary, figure_id);
    std::filesystem::create_directories(out_dir);
    const std::string id(figure_id);
    std::ofstream data(out_dir / (id + ".dat"));
    std::ofstream meta(out_dir / (id + ".meta"));
    if (!data || !meta) throw std::runtime_error("cannot write plot data under " + out_dir.string());
    data << panel.data;
    meta << panel.meta;
}

}  // namespace plo
