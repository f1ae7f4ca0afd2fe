#include "plo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "plo/indicators.hpp"
#include "plo/oracle.hpp"
#include "plo/pls.hpp"

namespace plo {

ExperimentMatrix ExperimentMatrix::paper() {
    ExperimentMatrix matrix;
    matrix.n_values = {8, 16};
    matrix.k_values = {1, 2, 4, 8};
    matrix.m_values = {2, 3, 5};
    matrix.rho_values = {-0.7, -0.2, 0.0, 0.2, 0.7};
    for (std::uint64_t s = 1; s <= 25; ++s) matrix.seeds.push_back(s);
    matrix.configs.push_back({ArchiverKind::Unbounded, std::nullopt});
    for (auto kind : {ArchiverKind::Hypervolume, ArchiverKind::MultiLevelGrid}) {
        for (std::size_t mu : {10, 20, 40, 80}) matrix.configs.push_back({kind, mu});
    }
    return matrix;
}

std::uint64_t derive_instance_seed(double rho, int m, int n, int k, std::uint64_t base) {
    std::uint64_t h = base;
    for (std::uint64_t v : {std::bit_cast<std::uint64_t>(rho), static_cast<std::uint64_t>(m),
                            static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)}) {
        h = mix64(h ^ v);
    }
    return h;
}

std::vector<InstanceParams> ExperimentMatrix::instances() const {
    if (n_values.empty() || k_values.empty() || m_values.empty() || rho_values.empty()) {
        throw std::invalid_argument("experiment matrix: every parameter grid needs at least one value");
    }
    auto sorted_unique = [](auto values) {
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        return values;
    };
    std::vector<InstanceParams> out;
    for (double rho : sorted_unique(rho_values)) {
        for (int m : sorted_unique(m_values)) {
            for (int n : sorted_unique(n_values)) {
                for (int k : sorted_unique(k_values)) {
                    InstanceParams p{n, m, k, rho, derive_instance_seed(rho, m, n, k, instance_seed_base)};
                    if (k < 0 || k >= n || m < 2 || !(rho > -1.0 / (m - 1)) || !(rho < 1.0) || n > kMaxBits) {
                        continue;
                    }
                    out.push_back(p);
                }
            }
        }
    }
    return out;
}

std::vector<ArchiverSetting> ExperimentMatrix::canonical_configs() const {
    auto out = configs;
    for (const auto& c : out) Archiver(c.kind, c.mu);  // validates
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint64_t> ExperimentMatrix::canonical_seeds() const {
    auto out = seeds;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Task> expand_matrix(const ExperimentMatrix& matrix) {
    const auto instances = matrix.instances();
    const auto configs = matrix.canonical_configs();
    const auto seeds = matrix.canonical_seeds();
    if (instances.empty() || configs.empty() || seeds.empty()) {
        throw std::invalid_argument("experiment matrix expands to no tasks");
    }
    std::vector<Task> tasks;
    tasks.reserve(instances.size() * configs.size() * seeds.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (const auto& config : configs) {
            for (std::uint64_t seed : seeds) {
                tasks.push_back(Task{i, instances[i], config, seed});
            }
        }
    }
    return tasks;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct PreparedInstance {
    std::optional<Instance> instance;
    std::vector<ObjectiveVector> front;
    double front_hv = 0.0;
    std::string error;
};

// Runs job(i) for i in [0, count) on `workers` threads; indices are handed
// out dynamically.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& job) {
    std::atomic<std::size_t> next{0};
    auto loop = [&] {
        for (std::size_t i = next++; i < count; i = next++) job(i);
    };
    workers = std::max(1U, workers);
    if (workers == 1 || count < 2) {
        loop();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
}

RunRecord run_task(const Task& task, const PreparedInstance& prepared, const RunOptions& options) {
    RunRecord record;
    record.rho = task.params.rho;
    record.m = task.params.m;
    record.n = task.params.n;
    record.k = task.params.k;
    record.config = task.config;
    record.seed = task.seed;
    if (!prepared.instance) {
        record.status = RunStatus::Failed;
        record.error = prepared.error;
        return record;
    }
    try {
        const auto start = Clock::now();
        PlsConfig config;
        config.archiver = task.config.kind;
        config.mu = task.config.mu;
        config.search_seed = task.seed;
        config.max_iterations = options.max_iterations;
        const RunStats stats = pls_run(*prepared.instance, config);
        if (options.record_timing) record.wall_ms = elapsed_ms(start);

        auto images = stats.plo_set.images();
        record.plo_set_size = stats.plo_set.size();
        record.length = stats.length;
        record.evaluations = stats.evaluations;
        record.epsilon = mult_epsilon(images, prepared.front);
        std::sort(images.begin(), images.end(), std::greater<>());
        record.matches_front = images == prepared.front;
        // The hypervolume is order independent, so a full front has ratio 0.
        record.hvr = record.matches_front ? 0.0 : hvr(images, prepared.front_hv);
        if (stats.capped) {
            record.status = RunStatus::Capped;
            record.error = "iteration cap reached";
        }

        if (options.verify) {
            const auto verify_start = Clock::now();
            const auto solutions = stats.plo_set.solutions();
            const bool unbounded = task.config.kind == ArchiverKind::Unbounded;
            const auto check = check_plo_set(*prepared.instance, solutions, unbounded);
            record.verified_plo_set = check.plo_set;
            if (unbounded) record.verified_maximal = check.maximal;
            record.verify_ms = elapsed_ms(verify_start);
            if (!*record.verified_plo_set || record.verified_maximal == false) {
                record.status = RunStatus::Failed;
                record.error = *record.verified_plo_set ? "output is not a maximal PLO-set"
                                                        : "output is not a PLO-set";
            }
        }
    } catch (const std::exception& e) {
        record.status = RunStatus::Failed;
        record.error = e.what();
    }
    return record;
}

}  // namespace

std::vector<RunRecord> run_matrix(const ExperimentMatrix& matrix, const RunOptions& options) {
    const auto tasks = expand_matrix(matrix);
    const auto params = matrix.instances();

    std::vector<PreparedInstance> prepared(params.size());
    parallel_for(params.size(), options.workers, [&](std::size_t i) {
        try {
            Instance instance = generate_instance(params[i]);
            auto enumeration = enumerate(instance);
            prepared[i].front = std::move(enumeration.pareto_front);
            prepared[i].front_hv = hypervolume(prepared[i].front);
            prepared[i].instance.emplace(std::move(instance));
        } catch (const std::exception& e) {
            prepared[i].error = e.what();
        }
    });

    std::vector<RunRecord> records(tasks.size());
    std::mutex progress_mutex;
    std::size_t done = 0;
    parallel_for(tasks.size(), options.workers, [&](std::size_t t) {
        records[t] = run_task(tasks[t], prepared[tasks[t].instance_index], options);
        if (options.progress) {
            std::lock_guard lock(progress_mutex);
            options.progress(++done, tasks.size());
        }
    });
    return records;
}

void write_csv(std::span<const RunRecord> records, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << format_real(r.rho) << ',' << r.m << ',' << r.n << ',' << r.k << ','
            << archiver_name(r.config.kind) << ',';
        if (r.config.mu) out << *r.config.mu;
        out << ',' << r.seed << ',';
        if (r.status == RunStatus::Failed) {
            out << "NA,NA,NA,NA,NA,";
        } else {
            out << r.plo_set_size << ',' << r.length << ',' << r.evaluations << ',' << format_real(r.hvr)
                << ',' << format_real(r.epsilon) << ',';
        }
        if (r.wall_ms) out << format_real(*r.wall_ms);
        out << '\n';
    }
}

namespace {

template <class T>
T parse_number(std::string_view token, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::runtime_error(std::string("CSV: cannot parse ") + what + " from '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

std::vector<RunRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw std::runtime_error("CSV: unexpected header '" + line + "'");
    std::vector<RunRecord> out;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 13) throw std::runtime_error("CSV: expected 13 fields in '" + line + "'");
        RunRecord r;
        r.rho = parse_number<double>(f[0], "rho");
        r.m = parse_number<int>(f[1], "m");
        r.n = parse_number<int>(f[2], "n");
        r.k = parse_number<int>(f[3], "k");
        r.config.kind = parse_archiver(f[4]);
        if (!f[5].empty()) r.config.mu = parse_number<std::size_t>(f[5], "mu");
        r.seed = parse_number<std::uint64_t>(f[6], "seed");
        if (f[7] == "NA") {
            r.status = RunStatus::Failed;
        } else {
            r.plo_set_size = parse_number<std::size_t>(f[7], "plo_set_size");
            r.length = parse_number<std::uint64_t>(f[8], "length");
            r.evaluations = parse_number<std::uint64_t>(f[9], "evaluations");
            r.hvr = parse_number<double>(f[10], "hvr");
            r.epsilon = parse_number<double>(f[11], "epsilon");
        }
        if (!f[12].empty()) r.wall_ms = parse_number<double>(f[12], "wall_ms");
        out.push_back(std::move(r));
    }
    return out;
}

Statistic summarize(std::span<const double> values) {
    Statistic s;
    if (values.empty()) return s;
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

std::vector<SummaryRow> aggregate(std::span<const RunRecord> records) {
    using Key = std::tuple<double, int, int, int, ArchiverSetting>;
    std::map<Key, std::vector<const RunRecord*>> groups;
    for (const auto& r : records) {
        if (r.status == RunStatus::Failed) continue;
        groups[Key{r.rho, r.m, r.n, r.k, r.config}].push_back(&r);
    }
    std::vector<SummaryRow> out;
    out.reserve(groups.size());
    for (const auto& [key, members] : groups) {
        SummaryRow row;
        std::tie(row.rho, row.m, row.n, row.k, row.config) = key;
        row.count = members.size();
        auto stat = [&](auto field) {
            std::vector<double> values;
            values.reserve(members.size());
            for (const RunRecord* r : members) values.push_back(static_cast<double>(field(*r)));
            return summarize(values);
        };
        row.plo_set_size = stat([](const RunRecord& r) { return r.plo_set_size; });
        row.length = stat([](const RunRecord& r) { return r.length; });
        row.evaluations = stat([](const RunRecord& r) { return r.evaluations; });
        row.hvr = stat([](const RunRecord& r) { return r.hvr; });
        row.epsilon = stat([](const RunRecord& r) { return r.epsilon; });
        out.push_back(std::move(row));
    }
    return out;
}

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out) {
    out << "rho,m,n,k,archiver,mu,count";
    for (const char* name : {"plo_set_size", "length", "evaluations", "hvr", "epsilon"}) {
        out << ',' << name << "_mean," << name << "_std";
    }
    out << '\n';
    for (const auto& r : rows) {
        out << format_real(r.rho) << ',' << r.m << ',' << r.n << ',' << r.k << ','
            << archiver_name(r.config.kind) << ',';
        if (r.config.mu) out << *r.config.mu;
        out << ',' << r.count;
        for (const Statistic* s : {&r.plo_set_size, &r.length, &r.evaluations, &r.hvr, &r.epsilon}) {
            out << ',' << format_real(s->mean) << ',';
            if (s->stddev) out << format_real(*s->stddev);
        }
        out << '\n';
    }
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> grid_values(const std::string& raw, int line_no) {
    std::string value = raw;
    if (!value.empty() && value.front() == '[') {
        if (value.back() != ']') {
            throw std::runtime_error("grid line " + std::to_string(line_no) + ": unterminated list");
        }
        value = value.substr(1, value.size() - 2);
    }
    std::vector<std::string> out;
    for (auto piece : split(value, ',')) {
        std::string item = trim(piece);
        if (item.empty()) continue;
        if (item.size() >= 2 && item.front() == '"' && item.back() == '"') item = item.substr(1, item.size() - 2);
        out.push_back(item);
    }
    return out;
}

}  // namespace

ExperimentMatrix read_grid(std::istream& in) {
    ExperimentMatrix matrix = ExperimentMatrix::paper();
    std::optional<std::vector<ArchiverKind>> archivers;
    std::optional<std::vector<std::size_t>> mus;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("grid line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(text).substr(0, eq));
        const auto values = grid_values(trim(std::string_view(text).substr(eq + 1)), line_no);
        auto ints = [&] {
            std::vector<int> out;
            for (const auto& v : values) out.push_back(parse_number<int>(v, key.c_str()));
            return out;
        };
        if (key == "n") {
            matrix.n_values = ints();
        } else if (key == "k") {
            matrix.k_values = ints();
        } else if (key == "m") {
            matrix.m_values = ints();
        } else if (key == "rho") {
            matrix.rho_values.clear();
            for (const auto& v : values) matrix.rho_values.push_back(parse_number<double>(v, "rho"));
        } else if (key == "seeds") {
            matrix.seeds.clear();
            if (text.find('[') == std::string::npos && values.size() == 1) {
                const auto count = parse_number<std::uint64_t>(values[0], "seeds");
                for (std::uint64_t s = 1; s <= count; ++s) matrix.seeds.push_back(s);
            } else {
                for (const auto& v : values) matrix.seeds.push_back(parse_number<std::uint64_t>(v, "seeds"));
            }
        } else if (key == "archivers") {
            archivers.emplace();
            for (const auto& v : values) archivers->push_back(parse_archiver(v));
        } else if (key == "mu") {
            mus.emplace();
            for (const auto& v : values) mus->push_back(parse_number<std::size_t>(v, "mu"));
        } else if (key == "instance_seed_base") {
            matrix.instance_seed_base = parse_number<std::uint64_t>(values.at(0), key.c_str());
        } else {
            throw std::runtime_error("grid line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (archivers || mus) {
        const auto kinds = archivers.value_or(std::vector<ArchiverKind>{
            ArchiverKind::Unbounded, ArchiverKind::Hypervolume, ArchiverKind::MultiLevelGrid});
        const auto caps = mus.value_or(std::vector<std::size_t>{10, 20, 40, 80});
        matrix.configs.clear();
        for (auto kind : kinds) {
            if (kind == ArchiverKind::Unbounded) {
                matrix.configs.push_back({kind, std::nullopt});
            } else {
                for (std::size_t mu : caps) matrix.configs.push_back({kind, mu});
            }
        }
    }
    return matrix;
}

ExperimentMatrix load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open grid file " + path);
    return read_grid(in);
}

}  // namespace plo
