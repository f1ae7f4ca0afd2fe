#include <algorithm>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "plo/oracle.hpp"
#include "plo/pls.hpp"

using plo::ArchiverKind;
using plo::Instance;
using plo::InstanceParams;
using plo::PlsConfig;
using V = std::vector<double>;

namespace {

PlsConfig config_for(ArchiverKind kind, std::optional<std::size_t> mu, std::uint64_t seed) {
    PlsConfig c;
    c.archiver = kind;
    c.mu = mu;
    c.search_seed = seed;
    return c;
}

// A is better than B: every member of B is weakly dominated by a member of
// A, and the images differ.
bool better(const std::vector<V>& a, const std::vector<V>& b) {
    for (const auto& q : b) {
        bool covered = false;
        for (const auto& p : a) covered = covered || oracle::geq(p, q);
        if (!covered) return false;
    }
    auto sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa != sb;
}

}  // namespace

TEST_CASE("config validation") {
    CHECK_NOTHROW(config_for(ArchiverKind::Unbounded, std::nullopt, 1).validate());
    CHECK_NOTHROW(config_for(ArchiverKind::Hypervolume, 10, 1).validate());
    CHECK_THROWS_AS(config_for(ArchiverKind::Unbounded, 10, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(config_for(ArchiverKind::MultiLevelGrid, std::nullopt, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(config_for(ArchiverKind::Hypervolume, 0, 1).validate(), std::invalid_argument);
    const Instance inst = plo::generate_instance(InstanceParams{8, 2, 1, 0.0, 1});
    CHECK_THROWS_AS(plo::pls_run(inst, config_for(ArchiverKind::Hypervolume, std::nullopt, 1)), std::invalid_argument);
}

TEST_CASE("select_unvisited") {
    plo::Archive archive;
    for (std::uint32_t i = 0; i < 10; ++i) {
        archive.insert(plo::Solution(i, 4), {0.05 * (i + 1), 1.0 - 0.05 * (i + 1)}, i % 3 == 0);
    }
    REQUIRE(archive.unvisited_count() == 6);

    plo::Rng rng(77);
    std::map<std::size_t, int> counts;
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) ++counts[plo::select_unvisited(archive, rng)];
    CHECK(counts.size() == 6);
    double chi2 = 0.0;
    const double expected = draws / 6.0;
    for (const auto& [pos, count] : counts) {
        CHECK_FALSE(archive[pos].visited);
        chi2 += (count - expected) * (count - expected) / expected;
    }
    // 5 degrees of freedom, 0.1% critical value.
    CHECK(chi2 < 20.52);

    plo::Archive single;
    single.insert(plo::Solution(0, 4), {0.5, 0.5}, true);
    single.insert(plo::Solution(1, 4), {0.6, 0.4}, false);
    CHECK(plo::select_unvisited(single, rng) == 1);
    single.set_visited(1, true);
    CHECK_THROWS_AS(plo::select_unvisited(single, rng), std::logic_error);
}

TEST_CASE("constant instance stops after one iteration") {
    std::vector<std::vector<int>> links(6, std::vector<int>{});
    const Instance inst(InstanceParams{6, 2, 0, 0.0, 0}, links, std::vector<double>(2 * 6 * 2, 0.5));
    const auto stats = plo::pls_run(inst, config_for(ArchiverKind::Unbounded, std::nullopt, 9));
    CHECK(stats.length == 1);
    CHECK(stats.evaluations == 6);
    CHECK(stats.plo_set.size() == 1);
    CHECK_FALSE(stats.capped);
}

TEST_CASE("runs are deterministic and well formed") {
    for (std::uint64_t s = 0; s < 6; ++s) {
        const Instance inst = plo::generate_instance(InstanceParams{10, 2 + static_cast<int>(s % 2), 2, -0.2, s});
        for (auto [kind, mu] : {std::pair{ArchiverKind::Unbounded, std::optional<std::size_t>{}},
                                std::pair{ArchiverKind::Hypervolume, std::optional<std::size_t>{3}},
                                std::pair{ArchiverKind::MultiLevelGrid, std::optional<std::size_t>{3}}}) {
            const auto cfg = config_for(kind, mu, 100 + s);
            const auto a = plo::pls_run(inst, cfg);
            const auto b = plo::pls_run(inst, cfg);
            CHECK(a.length == b.length);
            CHECK(a.plo_set.images() == b.plo_set.images());
            CHECK(a.plo_set.solutions() == b.plo_set.solutions());
            CHECK(a.evaluations == a.length * 10);
            CHECK(a.seed == 100 + s);
            CHECK(a.plo_set.unvisited_count() == 0);
            CHECK_NOTHROW(a.plo_set.check_invariants());
            const auto set = a.plo_set.solutions();
            CHECK(plo::is_plo_set(inst, set));
            if (kind == ArchiverKind::Unbounded) CHECK(plo::is_maximal_plo_set(inst, set));
            for (const auto& e : a.plo_set) CHECK(e.objectives == inst.evaluate(e.solution));
        }
    }
}

TEST_CASE("iteration cap") {
    const Instance inst = plo::generate_instance(InstanceParams{12, 3, 2, -0.2, 1});
    auto cfg = config_for(ArchiverKind::Unbounded, std::nullopt, 3);
    cfg.max_iterations = 2;
    const auto stats = plo::pls_run(inst, cfg);
    CHECK(stats.capped);
    CHECK(stats.length == 2);
    CHECK(stats.evaluations == 24);
}

TEST_CASE("snapshots") {
    const Instance inst = plo::generate_instance(InstanceParams{10, 2, 2, 0.0, 2});
    auto cfg = config_for(ArchiverKind::Unbounded, std::nullopt, 4);
    cfg.snapshot_every = 3;
    const auto stats = plo::pls_run(inst, cfg);
    CHECK(stats.snapshots.size() == 2 + stats.length / 3);
    CHECK(stats.snapshots.front().size() == 1);
    CHECK(stats.snapshots.back() == stats.plo_set.images());
    cfg.snapshot_every = 0;
    CHECK(plo::pls_run(inst, cfg).snapshots.empty());
}

TEST_CASE("bounded archive sequences never get worse") {
    int sequences = 0;
    long violations = 0;
    for (auto kind : {ArchiverKind::Hypervolume, ArchiverKind::MultiLevelGrid}) {
        for (std::uint64_t s = 0; s < 500; ++s) {
            const int m = 2 + static_cast<int>(s % 3);
            const Instance inst = plo::generate_instance(InstanceParams{10, m, 1 + static_cast<int>(s % 4), m == 5 ? 0.0 : -0.2, s});
            auto cfg = config_for(kind, 2 + s % 7, s);
            cfg.snapshot_every = 1;
            const auto stats = plo::pls_run(inst, cfg);
            const auto& snaps = stats.snapshots;
            for (std::size_t i = 0; i < snaps.size(); ++i) {
                for (std::size_t j = i + 1; j < snaps.size(); ++j) {
                    if (better(snaps[i], snaps[j])) ++violations;
                }
            }
            ++sequences;
        }
    }
    CHECK(sequences >= 1000);
    CHECK(violations == 0);
}

TEST_CASE("bounding reduces length and quality on a paper-like instance") {
    const Instance inst = plo::generate_instance(InstanceParams{12, 3, 4, -0.2, 7});
    double len_unb = 0.0, len_hva = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s) {
        len_unb += static_cast<double>(plo::pls_run(inst, config_for(ArchiverKind::Unbounded, std::nullopt, s)).length);
        len_hva += static_cast<double>(plo::pls_run(inst, config_for(ArchiverKind::Hypervolume, 10, s)).length);
    }
    CHECK(len_hva < len_unb);
}
