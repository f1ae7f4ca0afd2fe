#include "plo/pls.hpp"

#include <numeric>
#include <stdexcept>

namespace plo {

void PlsConfig::validate() const {
    if (archiver == ArchiverKind::Unbounded && mu) {
        throw std::invalid_argument("PLS config: mu must be absent for the unbounded archiver");
    }
    if (archiver != ArchiverKind::Unbounded && (!mu || *mu < 1)) {
        throw std::invalid_argument("PLS config: bounded archivers need mu >= 1");
    }
}

std::size_t select_unvisited(const Archive& archive, Rng& rng) {
    const std::size_t unvisited = archive.unvisited_count();
    if (unvisited == 0) {
        throw std::logic_error("select_unvisited: every archive entry is visited");
    }
    std::size_t target = rng.below(unvisited);
    for (std::size_t pos = 0; pos < archive.size(); ++pos) {
        if (archive[pos].visited) continue;
        if (target == 0) return pos;
        --target;
    }
    throw std::logic_error("select_unvisited: inconsistent unvisited count");
}

RunStats pls_run(const Instance& instance, const PlsConfig& config) {
    config.validate();
    const int n = instance.n();
    Archiver archiver(config.archiver, config.mu);
    Rng rng(config.search_seed);

    RunStats stats;
    stats.seed = config.search_seed;
    Archive& archive = stats.plo_set;
    archive = archiver.make_archive();

    const std::uint32_t mask = (n >= 32) ? ~0U : ((1U << n) - 1U);
    const Solution start(static_cast<std::uint32_t>(rng.next_u64()) & mask, n);
    archive.insert(start, instance.evaluate(start), false);

    auto snapshot = [&] { stats.snapshots.push_back(archive.images()); };
    if (config.snapshot_every > 0) snapshot();

    std::vector<int> order(static_cast<std::size_t>(n));
    while (archive.unvisited_count() > 0) {
        if (config.max_iterations && stats.length >= *config.max_iterations) {
            stats.capped = true;
            break;
        }
        const std::size_t pos = select_unvisited(archive, rng);
        // Copies: the archiver may evict the entry being expanded.
        const Solution current = archive[pos].solution;
        const std::uint64_t current_index = archive[pos].insertion_index;

        std::iota(order.begin(), order.end(), 0);
        for (int i = n - 1; i > 0; --i) {
            const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
            std::swap(order[i], order[j]);
        }
        for (int j : order) {
            const Solution neighbor = current.flipped(j);
            archiver.add(archive, neighbor, instance.evaluate(neighbor));
#ifndef NDEBUG
            archive.check_invariants();
#endif
        }
        ++stats.length;
        if (const auto still = archive.find(current_index)) {
            archive.set_visited(*still, true);
        }
        if (config.snapshot_every > 0 && stats.length % config.snapshot_every == 0) snapshot();
    }
    if (config.snapshot_every > 0) snapshot();
    stats.evaluations = stats.length * static_cast<std::uint64_t>(n);
    return stats;
}

}  // namespace plo
