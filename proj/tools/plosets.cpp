// Command line front end: instance generation, enumeration, single PLS
// runs, the experiment matrix and plot-data reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "plo/bench.hpp"
#include "plo/indicators.hpp"
#include "plo/oracle.hpp"
#include "plo/plot.hpp"
#include "plo/pls.hpp"

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_front(const std::vector<plo::ObjectiveVector>& front, std::ostream& out) {
    for (const auto& v : front) {
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << plo::format_real(v[i]);
        out << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pareto local search on rho-MNK landscapes"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Generate a rho-MNK instance file");
    plo::InstanceParams gen_params{16, 2, 4, 0.0, 1};
    std::string gen_out;
    generate->add_option("--n", gen_params.n, "Bit-string length")->capture_default_str();
    generate->add_option("--m", gen_params.m, "Number of objectives")->capture_default_str();
    generate->add_option("--k", gen_params.k, "Epistatic degree")->capture_default_str();
    generate->add_option("--rho", gen_params.rho, "Objective correlation")->capture_default_str();
    generate->add_option("--seed", gen_params.gen_seed, "Generation seed")->capture_default_str();
    generate->add_option("--out", gen_out, "Instance file (stdout if omitted)");

    // enumerate
    auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate an instance and write its Pareto front");
    std::string enum_instance;
    std::string enum_out;
    bool enum_census = false;
    enumerate_cmd->add_option("--instance", enum_instance, "Instance file")->required();
    enumerate_cmd->add_option("--out", enum_out, "Front file, one vector per line")->required();
    enumerate_cmd->add_flag("--census", enum_census, "Also count Pareto local optima");

    // pls
    auto* pls = app.add_subcommand("pls", "Run Pareto local search once");
    std::string pls_instance;
    std::string pls_archiver = "unb";
    std::size_t pls_mu = 0;
    std::uint64_t pls_seed = 0;
    std::uint64_t pls_snapshots = 0;
    std::uint64_t pls_cap = 0;
    bool pls_print = false;
    bool pls_verify = false;
    pls->add_option("--instance", pls_instance, "Instance file")->required();
    pls->add_option("--archiver", pls_archiver, "unb, hva or mga")
        ->check(CLI::IsMember({"unb", "hva", "mga"}))
        ->capture_default_str();
    pls->add_option("--mu", pls_mu, "Archive capacity for hva and mga");
    pls->add_option("--seed", pls_seed, "Search seed")->required();
    pls->add_option("--snapshots", pls_snapshots, "Print the archive size every K iterations");
    pls->add_option("--max-iterations", pls_cap, "Abort after this many iterations");
    pls->add_flag("--print-set", pls_print, "Print the PLO-set, one entry per line");
    pls->add_flag("--verify", pls_verify, "Check the result with the enumeration oracle");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Run an experiment matrix");
    std::string grid = "paper";
    std::string exp_out;
    unsigned workers = std::max(1U, std::thread::hardware_concurrency());
    bool exp_verify = false;
    bool no_timing = false;
    std::uint64_t exp_cap = 0;
    std::vector<int> n_values, k_values, m_values;
    std::vector<double> rho_values;
    std::uint64_t seed_count = 0;
    experiment->add_option("--grid", grid, "'paper' or a grid file")->capture_default_str();
    experiment->add_option("--out", exp_out, "Output directory")->required();
    experiment->add_option("--workers", workers, "Worker threads")->capture_default_str();
    experiment->add_flag("--verify", exp_verify, "Verify every PLO-set with the oracle");
    experiment->add_flag("--no-timing", no_timing, "Leave wall_ms empty for byte-reproducible output");
    experiment->add_option("--max-iterations", exp_cap, "Per-run iteration cap");
    experiment->add_option("--n", n_values, "Override n values")->delimiter(',');
    experiment->add_option("--k", k_values, "Override k values")->delimiter(',');
    experiment->add_option("--m", m_values, "Override m values")->delimiter(',');
    experiment->add_option("--rho", rho_values, "Override rho values")->delimiter(',');
    experiment->add_option("--seeds", seed_count, "Override seeds with 1..N");

    // report
    auto* report = app.add_subcommand("report", "Aggregate records and emit plot data");
    std::string records_path;
    std::vector<std::string> figures;
    std::string report_out;
    report->add_option("--records", records_path, "records.csv from experiment")->required();
    report->add_option("--figure", figures, "fig1a..fig3f, or 'all'")->required()->delimiter(',');
    report->add_option("--out", report_out, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate) {
            const plo::Instance instance = plo::generate_instance(gen_params);
            if (gen_out.empty()) {
                plo::write_instance(instance, std::cout);
            } else {
                auto out = open_output(gen_out);
                plo::write_instance(instance, out);
            }
        } else if (*enumerate_cmd) {
            const plo::Instance instance = plo::load_instance(enum_instance);
            const auto result = plo::enumerate(instance, std::max(1U, std::thread::hardware_concurrency()));
            auto out = open_output(enum_out);
            write_front(result.pareto_front, out);
            std::cout << "solutions " << result.size() << '\n'
                      << "front_size " << result.pareto_front.size() << '\n'
                      << "pareto_set_size " << result.pareto_set_size << '\n'
                      << "front_hypervolume " << plo::format_real(plo::hypervolume(result.pareto_front)) << '\n';
            if (enum_census) {
                std::cout << "plo_solutions " << plo::census_plo_solutions(result).size() << '\n';
            }
        } else if (*pls) {
            const plo::Instance instance = plo::load_instance(pls_instance);
            plo::PlsConfig config;
            config.archiver = plo::parse_archiver(pls_archiver);
            if (pls_mu > 0) config.mu = pls_mu;
            config.search_seed = pls_seed;
            config.snapshot_every = pls_snapshots;
            if (pls_cap > 0) config.max_iterations = pls_cap;
            const plo::RunStats stats = plo::pls_run(instance, config);
            std::cout << "archiver " << pls_archiver << '\n'
                      << "mu " << (config.mu ? std::to_string(*config.mu) : "-") << '\n'
                      << "seed " << stats.seed << '\n'
                      << "plo_set_size " << stats.plo_set.size() << '\n'
                      << "length " << stats.length << '\n'
                      << "evaluations " << stats.evaluations << '\n'
                      << "capped " << (stats.capped ? 1 : 0) << '\n';
            if (pls_verify) {
                const auto solutions = stats.plo_set.solutions();
                std::cout << "is_plo_set " << plo::is_plo_set(instance, solutions) << '\n'
                          << "is_maximal_plo_set " << plo::is_maximal_plo_set(instance, solutions) << '\n';
                if (instance.n() <= plo::kMaxEnumerationBits) {
                    const auto result = plo::enumerate(instance);
                    const auto images = stats.plo_set.images();
                    std::cout << "hvr " << plo::format_real(plo::hvr(images, result.pareto_front)) << '\n'
                              << "epsilon " << plo::format_real(plo::mult_epsilon(images, result.pareto_front))
                              << '\n';
                }
            }
            for (std::size_t s = 0; s < stats.snapshots.size(); ++s) {
                std::cout << "snapshot " << s << ' ' << stats.snapshots[s].size() << '\n';
            }
            if (pls_print) stats.plo_set.write_snapshot(std::cout);
        } else if (*experiment) {
            plo::ExperimentMatrix matrix =
                grid == "paper" ? plo::ExperimentMatrix::paper() : plo::load_grid(grid);
            if (!n_values.empty()) matrix.n_values = n_values;
            if (!k_values.empty()) matrix.k_values = k_values;
            if (!m_values.empty()) matrix.m_values = m_values;
            if (!rho_values.empty()) matrix.rho_values = rho_values;
            if (seed_count > 0) {
                matrix.seeds.clear();
                for (std::uint64_t s = 1; s <= seed_count; ++s) matrix.seeds.push_back(s);
            }
            plo::RunOptions options;
            options.workers = workers;
            options.verify = exp_verify;
            options.record_timing = !no_timing;
            if (exp_cap > 0) options.max_iterations = exp_cap;
            options.progress = [](std::size_t done, std::size_t total) {
                if (done % 500 == 0 || done == total) std::cerr << "\r" << done << "/" << total << std::flush;
            };
            const auto records = plo::run_matrix(matrix, options);
            std::cerr << '\n';
            const fs::path dir(exp_out);
            {
                auto out = open_output(dir / "records.csv");
                plo::write_csv(records, out);
            }
            {
                auto out = open_output(dir / "summary.csv");
                const auto summary = plo::aggregate(records);
                plo::write_summary_csv(summary, out);
            }
            std::size_t problems = 0;
            std::ostringstream log;
            for (const auto& r : records) {
                if (r.status == plo::RunStatus::Ok) continue;
                ++problems;
                log << plo::format_real(r.rho) << ',' << r.m << ',' << r.n << ',' << r.k << ','
                    << plo::archiver_name(r.config.kind) << ','
                    << (r.config.mu ? std::to_string(*r.config.mu) : "") << ',' << r.seed << ','
                    << (r.status == plo::RunStatus::Capped ? "capped" : "failed") << ',' << r.error << '\n';
            }
            if (problems > 0) {
                auto out = open_output(dir / "errors.txt");
                out << log.str();
            }
            std::cout << "runs " << records.size() << '\n' << "problems " << problems << '\n';
            return problems == 0 ? 0 : 2;
        } else if (*report) {
            std::ifstream in(records_path);
            if (!in) throw std::runtime_error("cannot open " + records_path);
            const auto records = plo::read_csv(in);
            const auto summary = plo::aggregate(records);
            if (figures.size() == 1 && figures.front() == "all") {
                figures.clear();
                for (const auto& spec : plo::figure_specs()) figures.push_back(spec.id);
            }
            for (const auto& id : figures) plo::emit_plot_data(summary, id, report_out);
            auto out = open_output(fs::path(report_out) / "summary.csv");
            plo::write_summary_csv(summary, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
