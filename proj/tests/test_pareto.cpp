#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "plo/pareto.hpp"
#include "plo/rng.hpp"

using plo::Dominance;
using V = std::vector<double>;

TEST_CASE("compare") {
    CHECK(plo::compare(V{1, 0}, V{0, 0}) == Dominance::Dominates);
    CHECK(plo::compare(V{0, 0}, V{1, 0}) == Dominance::DominatedBy);
    CHECK(plo::compare(V{1, 0}, V{0, 1}) == Dominance::Incomparable);
    CHECK(plo::compare(V{0.5, 0.5}, V{0.5, 0.5}) == Dominance::Equal);
    CHECK_THROWS_AS(plo::compare(V{1, 0}, V{1, 0, 0}), std::invalid_argument);
}

TEST_CASE("weak and strict dominance") {
    CHECK(plo::weakly_dominates(V{1, 1}, V{1, 0}));
    CHECK_FALSE(plo::weakly_dominates(V{1, 0}, V{0, 1}));
    CHECK(plo::weakly_dominates(V{0.3, 0.3}, V{0.3, 0.3}));
    CHECK_FALSE(plo::dominates(V{0.3, 0.3}, V{0.3, 0.3}));
    CHECK(plo::dominates(V{0.3, 0.4}, V{0.3, 0.3}));
    CHECK_THROWS_AS(plo::weakly_dominates(V{1}, V{1, 0}), std::invalid_argument);
}

TEST_CASE("dominance properties on random vectors") {
    plo::Rng rng(5);
    auto draw = [&] {
        V v(3);
        // Coarse values so that ties and dominance both occur often.
        for (auto& x : v) x = static_cast<double>(rng.below(4)) / 4.0;
        return v;
    };
    for (int t = 0; t < 3000; ++t) {
        const V a = draw(), b = draw(), c = draw();
        const Dominance ab = plo::compare(a, b);
        const Dominance ba = plo::compare(b, a);
        if (ab == Dominance::Dominates) CHECK(ba == Dominance::DominatedBy);
        if (ab == Dominance::DominatedBy) CHECK(ba == Dominance::Dominates);
        if (ab == Dominance::Equal || ab == Dominance::Incomparable) CHECK(ba == ab);
        CHECK_FALSE(plo::dominates(a, a));
        if (plo::dominates(a, b) && plo::dominates(b, c)) CHECK(plo::dominates(a, c));
        CHECK(plo::dominates(a, b) == oracle::strictly_dominates(a, b));
    }
}

TEST_CASE("nondominated_filter") {
    // (0.2, 0.2) is incomparable to both corners, so it stays.
    CHECK(plo::nondominated_filter(std::vector<V>{{1, 0}, {0, 1}, {0.2, 0.2}}) ==
          std::vector<V>{{1, 0}, {0.2, 0.2}, {0, 1}});
    CHECK(plo::nondominated_filter(std::vector<V>{{1, 0}, {0, 1}, {0.2, 0.2}, {0.5, 0.5}}) ==
          std::vector<V>{{1, 0}, {0.5, 0.5}, {0, 1}});
    CHECK(plo::nondominated_filter(std::vector<V>{{0.4, 0.1}}) == std::vector<V>{{0.4, 0.1}});
    CHECK(plo::nondominated_filter(std::vector<V>{{0.4, 0.1}, {0.4, 0.1}}) == std::vector<V>{{0.4, 0.1}});
    CHECK(plo::nondominated_filter(std::vector<V>{}).empty());
    CHECK_THROWS_AS(plo::nondominated_filter(std::vector<V>{{1, 0}, {1}}), std::invalid_argument);

    plo::Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        std::vector<V> pts(100, V(3));
        for (auto& p : pts) {
            for (auto& x : p) x = (t % 2 == 0) ? rng.uniform01() : static_cast<double>(rng.below(6));
        }
        CHECK(plo::nondominated_filter(pts) == oracle::brute_nondominated(pts));
    }
}

TEST_CASE("archive container") {
    plo::Archive archive(3);
    CHECK(archive.capacity() == std::optional<std::size_t>(3));
    CHECK(archive.empty());
    const auto a = archive.insert(plo::Solution(1, 4), {0.9, 0.1});
    const auto b = archive.insert(plo::Solution(2, 4), {0.5, 0.5});
    const auto c = archive.insert(plo::Solution(3, 4), {0.1, 0.9}, true);
    CHECK(a == 0);
    CHECK(b == 1);
    CHECK(c == 2);
    CHECK(archive.unvisited_count() == 2);
    CHECK(archive.values().size() == 6);
    CHECK(archive.contains_solution(plo::Solution(2, 4)));
    CHECK_NOTHROW(archive.check_invariants());

    CHECK(archive.find(1) == std::optional<std::size_t>(1));
    const auto removed = archive.erase_at(1);
    CHECK(removed.insertion_index == 1);
    CHECK_FALSE(archive.find(1).has_value());
    CHECK(archive.find(2) == std::optional<std::size_t>(1));
    CHECK(archive.values()[2] == 0.1);

    const auto d = archive.insert(plo::Solution(4, 4), {0.6, 0.6});
    CHECK(d == 3);
    std::vector<std::size_t> positions{0, 2};
    const auto gone = archive.erase_positions(positions);
    CHECK(gone.size() == 2);
    REQUIRE(archive.size() == 1);
    CHECK(archive[0].insertion_index == 2);
    CHECK(archive.values().size() == 2);

    std::ostringstream out;
    archive.write_snapshot(out);
    CHECK(out.str() == "1100 0.10000000000000001 0.90000000000000002 1\n");

    archive.insert(plo::Solution(5, 4), {0.05, 0.95});
    archive.insert(plo::Solution(6, 4), {0.0, 0.95});
    CHECK_THROWS_AS(archive.check_invariants(), std::logic_error);
    CHECK_THROWS_AS(archive.insert(plo::Solution(7, 4), {0.5}), std::invalid_argument);
}

TEST_CASE("archive capacity check") {
    plo::Archive archive(1);
    archive.insert(plo::Solution(0, 2), {0.9, 0.1});
    archive.insert(plo::Solution(1, 2), {0.1, 0.9});
    CHECK_THROWS_AS(archive.check_invariants(), std::logic_error);
}
