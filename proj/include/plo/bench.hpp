#pragma once

// Experiment matrix runner: expands a parameter grid into PLS runs, executes
// them on a worker pool against enumerated Pareto fronts, and persists the
// measurements as CSV in a canonical order.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plo/archivers.hpp"
#include "plo/landscape.hpp"

namespace plo {

struct ArchiverSetting {
    ArchiverKind kind = ArchiverKind::Unbounded;
    std::optional<std::size_t> mu;

    friend bool operator==(const ArchiverSetting&, const ArchiverSetting&) = default;
    friend auto operator<=>(const ArchiverSetting&, const ArchiverSetting&) = default;
};

struct ExperimentMatrix {
    std::vector<int> n_values;
    std::vector<int> k_values;
    std::vector<int> m_values;
    std::vector<double> rho_values;
    std::vector<std::uint64_t> seeds;
    std::vector<ArchiverSetting> configs;
    std::uint64_t instance_seed_base = 0;

    /// n in {8,16}, k in {1,2,4,8}, m in {2,3,5},
    /// rho in {-0.7,-0.2,0,0.2,0.7}, seeds 1..25, unb plus hva and mga at
    /// mu in {10,20,40,80}.
    static ExperimentMatrix paper();

    /// Valid parameter combinations (k < n, rho > -1/(m-1)) sorted by
    /// (rho, m, n, k), each with its derived generation seed. Throws
    /// std::invalid_argument if any grid is empty.
    std::vector<InstanceParams> instances() const;

    /// configs sorted (unb, hva by mu, mga by mu) without duplicates.
    std::vector<ArchiverSetting> canonical_configs() const;
    std::vector<std::uint64_t> canonical_seeds() const;
};

/// Generation seed of the instance for a parameter tuple: starting from
/// `base`, fold in the bit pattern of rho, then m, n and k, each step being
/// h = mix64(h ^ value).
std::uint64_t derive_instance_seed(double rho, int m, int n, int k, std::uint64_t base);

struct Task {
    std::size_t instance_index = 0;
    InstanceParams params;
    ArchiverSetting config;
    std::uint64_t seed = 0;
};

/// All (instance, config, seed) combinations in canonical order: instances
/// as in ExperimentMatrix::instances, then configs, then seeds.
std::vector<Task> expand_matrix(const ExperimentMatrix& matrix);

enum class RunStatus { Ok, Capped, Failed };

struct RunRecord {
    double rho = 0.0;
    int m = 0;
    int n = 0;
    int k = 0;
    ArchiverSetting config;
    std::uint64_t seed = 0;
    std::size_t plo_set_size = 0;
    std::uint64_t length = 0;
    std::uint64_t evaluations = 0;
    double hvr = 0.0;
    double epsilon = 0.0;
    std::optional<double> wall_ms;

    RunStatus status = RunStatus::Ok;
    std::string error;

    // Filled by run_matrix only; not persisted.
    bool matches_front = false;
    std::optional<bool> verified_plo_set;
    std::optional<bool> verified_maximal;
    double verify_ms = 0.0;
};

struct RunOptions {
    unsigned workers = 1;
    /// Check every PLO-set with the oracle (maximality too for unb runs).
    bool verify = false;
    bool record_timing = true;
    std::optional<std::uint64_t> max_iterations;
    /// Called after each finished task with (done, total); may be invoked
    /// from worker threads, but never concurrently.
    std::function<void(std::size_t, std::size_t)> progress;
};

/// Runs every task; the result is in expand_matrix order whatever the
/// worker count. Per-task failures become Failed records.
std::vector<RunRecord> run_matrix(const ExperimentMatrix& matrix, const RunOptions& options);

inline constexpr const char* kCsvHeader =
    "rho,m,n,k,archiver,mu,seed,plo_set_size,length,evaluations,hvr,epsilon,wall_ms";

/// Failed records carry NA in every measured column.
void write_csv(std::span<const RunRecord> records, std::ostream& out);
std::vector<RunRecord> read_csv(std::istream& in);

struct Statistic {
    double mean = 0.0;
    std::optional<double> stddev;  // sample standard deviation, count >= 2
};

/// Mean and sample standard deviation (divisor count - 1).
Statistic summarize(std::span<const double> values);

struct SummaryRow {
    double rho = 0.0;
    int m = 0;
    int n = 0;
    int k = 0;
    ArchiverSetting config;
    std::size_t count = 0;
    Statistic plo_set_size;
    Statistic length;
    Statistic evaluations;
    Statistic hvr;
    Statistic epsilon;
};

/// Groups Ok and Capped records by (rho, m, n, k, archiver, mu), in that
/// sort order.
std::vector<SummaryRow> aggregate(std::span<const RunRecord> records);

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out);

/// Reads a grid description: `key = value` lines with keys n, k, m, rho,
/// seeds (a count N meaning 1..N, or a list), archivers (list of names),
/// mu (list) and instance_seed_base. Missing keys fall back to the paper
/// grid. `#` starts a comment.
ExperimentMatrix read_grid(std::istream& in);
ExperimentMatrix load_grid(const std::string& path);

}  // namespace plo
