#pragma once

// Archive update policies for Pareto local search. Each consumes one
// candidate at a time; the bounded ones behave as a (mu + 1) selection.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "plo/pareto.hpp"

namespace plo {

enum class ArchiverKind { Unbounded, Hypervolume, MultiLevelGrid };

/// "unb", "hva" or "mga".
std::string_view archiver_name(ArchiverKind kind);
ArchiverKind parse_archiver(std::string_view name);

struct AddResult {
    bool accepted = false;
    std::vector<ArchiveEntry> removed;
};

/// Accepts the candidate iff no entry weakly dominates it; entries it
/// dominates are removed. Accepted candidates enter unvisited.
AddResult unbounded_add(Archive& archive, const Solution& solution, ObjectiveVector objectives);

/// State kept between hva_add calls: for each entry (by insertion index,
/// ascending) its limited set and its contribution, which is a lower bound
/// unless `exact`. The chosen victim always equals the uncached choice.
struct HvaCache {
    struct Item {
        std::uint64_t index = 0;
        ObjectiveVector point;
        std::vector<double> limited;
        double contribution = 0.0;
        bool exact = false;
    };
    std::vector<Item> items;
    std::uint64_t hits = 0;    // exact contributions reused
    std::uint64_t misses = 0;  // exact contributions computed
};

/// Unbounded rule, then if the archive holds mu + 1 entries drop the one
/// with the smallest hypervolume contribution (origin reference). Ties go to
/// the lexicographically smallest vector, then the oldest entry.
AddResult hva_add(Archive& archive, const Solution& solution, ObjectiveVector objectives, std::size_t mu,
                  HvaCache* cache = nullptr);

/// Discretization depth used by the grid archiver.
inline constexpr int kGridDepth = 30;

using GridPoint = std::vector<std::uint32_t>;

/// floor(v_i * 2^depth) per coordinate. Throws std::invalid_argument unless
/// every v_i lies in [0, 1).
GridPoint discretize(std::span<const double> v, int depth = kGridDepth);

/// Smallest level b at which box_b(q) >= box_b(p) componentwise for q = a
/// and p = b, where box_b(v) = v >> b.
int coverage_level(std::span<const std::uint32_t> q, std::span<const std::uint32_t> p);

struct GridCoverage {
    int level = 0;              // critical level b*
    std::vector<bool> covered;  // points covered at b*
};

/// Critical level of a set of grid points and which points it covers.
/// Requires at least two points.
GridCoverage critical_level(const std::vector<GridPoint>& points);

/// Pairwise coverage levels of archive entries from earlier mga_add calls,
/// by insertion index (ascending).
struct MgaCache {
    std::vector<std::uint64_t> index;
    std::vector<std::uint32_t> grid;  // row-major, one row per entry
    std::vector<std::uint8_t> level;  // level[p * size + q]: q covering p
};

/// Unbounded rule, then if the archive holds mu + 1 entries find the
/// critical level b*: reject the candidate if it is covered there, else
/// drop the oldest covered entry.
AddResult mga_add(Archive& archive, const Solution& solution, ObjectiveVector objectives, std::size_t mu,
                  MgaCache* cache = nullptr);

/// An archiver kind bound to its capacity.
class Archiver {
public:
    Archiver(ArchiverKind kind, std::optional<std::size_t> mu);

    ArchiverKind kind() const { return kind_; }
    std::optional<std::size_t> mu() const { return mu_; }

    Archive make_archive() const;
    AddResult add(Archive& archive, const Solution& solution, ObjectiveVector objectives);

private:
    ArchiverKind kind_;
    std::optional<std::size_t> mu_;
    HvaCache hva_cache_;
    MgaCache mga_cache_;
};

}  // namespace plo
