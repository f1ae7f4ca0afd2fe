#pragma once

// Pareto dominance under maximization and the mutually nondominated archive
// that Pareto local search maintains.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "plo/landscape.hpp"

namespace plo {

enum class Dominance { Dominates, DominatedBy, Equal, Incomparable };

/// Relation of `a` to `b`. Throws std::invalid_argument on size mismatch.
Dominance compare(std::span<const double> a, std::span<const double> b);

/// a >= b componentwise.
bool weakly_dominates(std::span<const double> a, std::span<const double> b);

/// a >= b componentwise and a != b.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Points not dominated by any other point; duplicates collapse to one copy.
/// The result is sorted lexicographically in decreasing order.
std::vector<ObjectiveVector> nondominated_filter(std::vector<ObjectiveVector> points);

/// Same as above over a flat row-major buffer of `dim`-vectors.
std::vector<ObjectiveVector> nondominated_filter(std::span<const double> flat, int dim);

struct ArchiveEntry {
    Solution solution;
    ObjectiveVector objectives;
    bool visited = false;
    std::uint64_t insertion_index = 0;
};

/// Insertion-ordered set of mutually nondominated entries with distinct
/// objective vectors. Policy (what to accept, what to evict) lives in the
/// archivers; this class only stores and answers queries.
class Archive {
public:
    Archive() = default;
    explicit Archive(std::size_t capacity) : capacity_(capacity) {}

    std::optional<std::size_t> capacity() const { return capacity_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const ArchiveEntry& operator[](std::size_t pos) const { return entries_[pos]; }
    std::span<const ArchiveEntry> entries() const { return entries_; }

    /// Objective vectors of all entries, row-major, in entry order.
    std::span<const double> values() const { return values_; }
    std::size_t dimension() const { return dim_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    /// Appends and stamps the next insertion index; returns that index.
    std::uint64_t insert(Solution solution, ObjectiveVector objectives, bool visited = false);

    ArchiveEntry erase_at(std::size_t pos);

    /// Removes the entries at the given strictly increasing positions.
    std::vector<ArchiveEntry> erase_positions(std::span<const std::size_t> positions);

    /// Position of the entry with this insertion index, if still present.
    std::optional<std::size_t> find(std::uint64_t insertion_index) const;

    void set_visited(std::size_t pos, bool visited) { entries_[pos].visited = visited; }
    std::size_t unvisited_count() const;

    bool contains_solution(const Solution& x) const;

    /// Throws std::logic_error if entries are not mutually nondominated with
    /// distinct vectors, or the capacity is exceeded.
    void check_invariants() const;

    std::vector<ObjectiveVector> images() const;
    std::vector<Solution> solutions() const;

    /// One line per entry: `<bits> <f_1> ... <f_m> <visited>`.
    void write_snapshot(std::ostream& out) const;

private:
    std::optional<std::size_t> capacity_;
    std::vector<ArchiveEntry> entries_;
    std::vector<double> values_;
    std::size_t dim_ = 0;
    std::uint64_t next_index_ = 0;
};

}  // namespace plo
