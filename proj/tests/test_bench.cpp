#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "plo/bench.hpp"
#include "plo/plot.hpp"

using plo::ArchiverKind;
using plo::ExperimentMatrix;

namespace {

ExperimentMatrix small_matrix() {
    ExperimentMatrix mx;
    mx.n_values = {8};
    mx.k_values = {1, 4};
    mx.m_values = {2, 3};
    mx.rho_values = {-0.7, 0.0};
    mx.seeds = {1, 2, 3};
    mx.configs = {{ArchiverKind::MultiLevelGrid, 5}, {ArchiverKind::Unbounded, std::nullopt},
                  {ArchiverKind::Hypervolume, 5}};
    return mx;
}

std::string csv_of(const std::vector<plo::RunRecord>& records) {
    std::ostringstream out;
    plo::write_csv(records, out);
    return out.str();
}

}  // namespace

TEST_CASE("paper grid expands to 91 instances and 20475 runs") {
    const auto mx = ExperimentMatrix::paper();
    CHECK(mx.instances().size() == 91);
    CHECK(plo::expand_matrix(mx).size() == 20475);
    CHECK(mx.canonical_configs().size() == 9);
}

TEST_CASE("instance filtering and canonical order") {
    auto mx = ExperimentMatrix::paper();
    mx.m_values = {2};
    const auto inst = mx.instances();
    CHECK(inst.front().rho == -0.7);
    CHECK(inst.size() == 35);  // k=8 with n=8 is excluded
    mx.m_values = {5};
    for (const auto& p : mx.instances()) CHECK(p.rho > -0.25);

    const auto tasks = plo::expand_matrix(small_matrix());
    // rho=-0.7 is only valid for m=2: 6 instances, 3 configs, 3 seeds.
    CHECK(tasks.size() == 6 * 3 * 3);
    CHECK(tasks[0].config.kind == ArchiverKind::Unbounded);
    CHECK(tasks[3].config.kind == ArchiverKind::Hypervolume);
    CHECK(tasks[6].config.kind == ArchiverKind::MultiLevelGrid);
    CHECK(tasks[0].params.rho == -0.7);
    CHECK(tasks[1].seed == 2);
    for (std::size_t i = 1; i < tasks.size(); ++i) {
        const auto& a = tasks[i - 1].params;
        const auto& b = tasks[i].params;
        CHECK(std::tie(a.rho, a.m, a.n, a.k) <= std::tie(b.rho, b.m, b.n, b.k));
    }

    ExperimentMatrix empty = small_matrix();
    empty.k_values.clear();
    CHECK_THROWS_AS(plo::expand_matrix(empty), std::invalid_argument);
    empty = small_matrix();
    empty.seeds.clear();
    CHECK_THROWS_AS(plo::expand_matrix(empty), std::invalid_argument);
    empty = small_matrix();
    empty.configs = {{ArchiverKind::Hypervolume, std::nullopt}};
    CHECK_THROWS_AS(plo::expand_matrix(empty), std::invalid_argument);
}

TEST_CASE("instance seeds") {
    const auto a = plo::derive_instance_seed(0.0, 2, 16, 4, 0);
    CHECK(a == plo::derive_instance_seed(0.0, 2, 16, 4, 0));
    CHECK(a != plo::derive_instance_seed(-0.0, 2, 16, 4, 0));
    CHECK(a != plo::derive_instance_seed(0.0, 2, 16, 4, 1));
    std::set<std::uint64_t> seeds;
    for (const auto& p : ExperimentMatrix::paper().instances()) seeds.insert(p.gen_seed);
    CHECK(seeds.size() == 91);
}

TEST_CASE("run_matrix: records, identities and worker independence") {
    plo::RunOptions options;
    options.verify = true;
    options.record_timing = false;
    const auto one = plo::run_matrix(small_matrix(), options);
    options.workers = 3;
    std::size_t calls = 0;
    options.progress = [&](std::size_t done, std::size_t total) {
        ++calls;
        CHECK(done <= total);
    };
    const auto three = plo::run_matrix(small_matrix(), options);
    CHECK(calls == three.size());
    REQUIRE(one.size() == 54);
    CHECK(csv_of(one) == csv_of(three));

    for (const auto& r : one) {
        CHECK(r.status == plo::RunStatus::Ok);
        CHECK(r.evaluations == r.length * static_cast<std::uint64_t>(r.n));
        CHECK((r.hvr >= 0.0 && r.hvr < 1.0));
        CHECK(r.epsilon >= 1.0);
        CHECK(r.verified_plo_set == std::optional<bool>(true));
        if (r.config.kind == ArchiverKind::Unbounded) CHECK(r.verified_maximal == std::optional<bool>(true));
        if (r.matches_front) {
            CHECK(r.hvr == 0.0);
            CHECK(r.epsilon == 1.0);
        }
        CHECK_FALSE(r.wall_ms.has_value());
    }
}

TEST_CASE("csv round trip and failed rows") {
    plo::RunRecord ok;
    ok.rho = -0.2;
    ok.m = 3;
    ok.n = 16;
    ok.k = 4;
    ok.config = {ArchiverKind::Hypervolume, 20};
    ok.seed = 7;
    ok.plo_set_size = 20;
    ok.length = 123;
    ok.evaluations = 123 * 16;
    ok.hvr = 0.1;
    ok.epsilon = 1.0 / 3.0 + 1.0;
    ok.wall_ms = 12.5;
    plo::RunRecord failed = ok;
    failed.config = {ArchiverKind::Unbounded, std::nullopt};
    failed.status = plo::RunStatus::Failed;
    failed.wall_ms.reset();

    const std::string text = csv_of({ok, failed});
    std::istringstream lines(text);
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(header == "rho,m,n,k,archiver,mu,seed,plo_set_size,length,evaluations,hvr,epsilon,wall_ms");
    CHECK(row1 == "-0.20000000000000001,3,16,4,hva,20,7,20,123,1968,0.10000000000000001,1.3333333333333333,12.5");
    CHECK(row2 == "-0.20000000000000001,3,16,4,unb,,7,NA,NA,NA,NA,NA,");

    std::istringstream in(text);
    const auto back = plo::read_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].epsilon == ok.epsilon);
    CHECK(back[0].hvr == ok.hvr);
    CHECK(back[0].config == ok.config);
    CHECK(back[0].wall_ms == ok.wall_ms);
    CHECK(back[1].status == plo::RunStatus::Failed);
    CHECK_FALSE(back[1].config.mu.has_value());
    CHECK(csv_of(back) == text);

    std::istringstream bad_header("rho,m\n");
    CHECK_THROWS(plo::read_csv(bad_header));
    std::istringstream short_row(std::string(plo::kCsvHeader) + "\n0,2,8,1,unb,,1,3\n");
    CHECK_THROWS(plo::read_csv(short_row));
    std::istringstream bad_number(std::string(plo::kCsvHeader) + "\n0,2,8,1,unb,,x,3,4,32,0,1,\n");
    CHECK_THROWS(plo::read_csv(bad_number));
}

TEST_CASE("summaries") {
    const std::vector<double> two{1.0, 3.0};
    const auto s = plo::summarize(two);
    CHECK(s.mean == 2.0);
    REQUIRE(s.stddev);
    CHECK(*s.stddev == doctest::Approx(std::sqrt(2.0)));

    const std::vector<double> same(25, 4.5);
    const auto t = plo::summarize(same);
    CHECK(t.mean == 4.5);
    CHECK(*t.stddev == 0.0);

    const std::vector<double> single{3.0};
    CHECK_FALSE(plo::summarize(single).stddev.has_value());

    std::vector<plo::RunRecord> records(3);
    for (int i = 0; i < 3; ++i) {
        records[i].n = 8;
        records[i].m = 2;
        records[i].k = 1;
        records[i].plo_set_size = i == 0 ? 1 : 3;
        records[i].seed = static_cast<std::uint64_t>(i);
    }
    records[2].status = plo::RunStatus::Failed;
    records[2].plo_set_size = 1000;
    const auto rows = plo::aggregate(records);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].count == 2);
    CHECK(rows[0].plo_set_size.mean == 2.0);
    CHECK(*rows[0].plo_set_size.stddev == doctest::Approx(std::sqrt(2.0)));

    std::ostringstream out;
    plo::write_summary_csv(rows, out);
    CHECK(out.str().rfind("rho,m,n,k,archiver,mu,count,plo_set_size_mean,plo_set_size_std,", 0) == 0);
}

TEST_CASE("grid files") {
    std::istringstream in(R"(# reduced grid
n = [8]
k = [1, 2]
m = 2
rho = [-0.7, 0.0]   # two correlations
seeds = 3
archivers = ["unb", "mga"]
mu = [10]
instance_seed_base = 5
)");
    const auto mx = plo::read_grid(in);
    CHECK(mx.n_values == std::vector<int>{8});
    CHECK(mx.k_values == std::vector<int>{1, 2});
    CHECK(mx.m_values == std::vector<int>{2});
    CHECK(mx.rho_values == std::vector<double>{-0.7, 0.0});
    CHECK(mx.seeds == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(mx.instance_seed_base == 5);
    REQUIRE(mx.configs.size() == 2);
    CHECK(mx.configs[1] == plo::ArchiverSetting{ArchiverKind::MultiLevelGrid, 10});
    CHECK(plo::expand_matrix(mx).size() == 4 * 2 * 3);

    std::istringstream list("seeds = [4, 9]\n");
    const auto other = plo::read_grid(list);
    CHECK(other.seeds == std::vector<std::uint64_t>{4, 9});
    CHECK(other.n_values == ExperimentMatrix::paper().n_values);

    std::istringstream unknown("colour = blue\n");
    CHECK_THROWS(plo::read_grid(unknown));
    std::istringstream no_eq("n 8\n");
    CHECK_THROWS(plo::read_grid(no_eq));
    std::istringstream bad("k = [1, x]\n");
    CHECK_THROWS(plo::read_grid(bad));
    CHECK_THROWS(plo::load_grid("/nonexistent/grid.toml"));
}

TEST_CASE("plot panels") {
    CHECK(plo::figure_specs().size() == 16);
    CHECK_THROWS_AS(plo::figure_spec("fig4a"), std::invalid_argument);

    SUBCASE("empty summary gives a header only") {
        const auto panel = plo::build_plot_panel({}, "fig1c");
        CHECK(panel.data == "# x series mean std\n");
        CHECK(panel.meta.find("logy=1") != std::string::npos);
    }

    auto row = [](double rho, int m, int k, ArchiverKind kind, std::optional<std::size_t> mu, double mean) {
        plo::SummaryRow r;
        r.rho = rho;
        r.m = m;
        r.n = 16;
        r.k = k;
        r.config = {kind, mu};
        r.count = 25;
        r.plo_set_size = {mean, 1.0};
        r.hvr = {mean / 100, std::nullopt};
        return r;
    };

    SUBCASE("fig1c: one series per m over rho") {
        std::vector<plo::SummaryRow> rows{row(-0.2, 2, 4, ArchiverKind::Unbounded, std::nullopt, 10),
                                          row(0.0, 2, 4, ArchiverKind::Unbounded, std::nullopt, 5),
                                          row(0.0, 3, 4, ArchiverKind::Unbounded, std::nullopt, 50),
                                          row(0.0, 3, 4, ArchiverKind::Hypervolume, 10, 10),
                                          row(0.0, 3, 2, ArchiverKind::Unbounded, std::nullopt, 7)};
        const auto panel = plo::build_plot_panel(rows, "fig1c");
        CHECK(panel.data ==
              "# x series mean std\n"
              "-0.20000000000000001 m=2 10 1\n"
              "-0.20000000000000001 m=3 gap gap\n"
              "0 m=2 5 1\n"
              "0 m=3 50 1\n");
        CHECK(panel.meta ==
              "figure=fig1c measure=plo_set_size x=rho series=m slice=n=16,k=4,archiver=unb logx=0 logy=1\n");
    }

    SUBCASE("fig2d: algorithms over mu, unb repeated") {
        std::vector<plo::SummaryRow> rows{row(0.0, 5, 8, ArchiverKind::Unbounded, std::nullopt, 1),
                                          row(0.0, 5, 8, ArchiverKind::Hypervolume, 10, 20),
                                          row(0.0, 5, 8, ArchiverKind::Hypervolume, 80, 10),
                                          row(0.0, 5, 8, ArchiverKind::MultiLevelGrid, 10, 30)};
        const auto panel = plo::build_plot_panel(rows, "fig2d");
        CHECK(panel.data ==
              "# x series mean std\n"
              "10 unb 0.01 NA\n"
              "10 hva 0.20000000000000001 NA\n"
              "10 mga 0.29999999999999999 NA\n"
              "80 unb 0.01 NA\n"
              "80 hva 0.10000000000000001 NA\n"
              "80 mga gap gap\n");
        CHECK(panel.meta.find("logx=1 logy=0") != std::string::npos);

        const auto dir = std::filesystem::temp_directory_path() / "plo_plot_test";
        std::filesystem::remove_all(dir);
        plo::emit_plot_data(rows, "fig2d", dir);
        std::ifstream dat(dir / "fig2d.dat");
        std::stringstream buffer;
        buffer << dat.rdbuf();
        CHECK(buffer.str() == panel.data);
        CHECK(std::filesystem::exists(dir / "fig2d.meta"));
        std::filesystem::remove_all(dir);
    }
}
