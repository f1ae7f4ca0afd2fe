#pragma once

// Pareto local search over the 1-bit-flip neighborhood.

#include <cstdint>
#include <optional>
#include <vector>

#include "plo/archivers.hpp"
#include "plo/landscape.hpp"
#include "plo/pareto.hpp"
#include "plo/rng.hpp"

namespace plo {

struct PlsConfig {
    ArchiverKind archiver = ArchiverKind::Unbounded;
    std::optional<std::size_t> mu;
    std::uint64_t search_seed = 0;
    /// Abort after this many iterations; the partial result is flagged.
    std::optional<std::uint64_t> max_iterations;
    /// Record the archive image every this many iterations (0: never).
    std::uint64_t snapshot_every = 0;

    /// Throws std::invalid_argument unless mu is set exactly for the
    /// bounded archivers and is positive.
    void validate() const;
};

struct RunStats {
    Archive plo_set;
    std::uint64_t length = 0;
    std::uint64_t evaluations = 0;
    std::uint64_t seed = 0;
    bool capped = false;
    /// Archive images: the initial archive, then every snapshot_every
    /// iterations, then the final archive.
    std::vector<std::vector<ObjectiveVector>> snapshots;
};

/// Position of a uniformly chosen unvisited entry. Draws exactly one value
/// from `rng`. Throws std::logic_error if every entry is visited.
std::size_t select_unvisited(const Archive& archive, Rng& rng);

/// Runs PLS to completion. The search stream is consumed in this order:
/// one draw for the initial solution (its low n bits), then per iteration
/// one selection draw followed by n - 1 Fisher-Yates draws that fix the
/// order in which the neighbors are offered to the archiver.
RunStats pls_run(const Instance& instance, const PlsConfig& config);

}  // namespace plo
