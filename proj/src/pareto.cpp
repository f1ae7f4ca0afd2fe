#include "plo/pareto.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace plo {

Dominance compare(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("compare: objective vectors differ in dimension");
    }
    bool a_better = false;
    bool b_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            a_better = true;
        } else if (a[i] < b[i]) {
            b_better = true;
        }
    }
    if (a_better && b_better) return Dominance::Incomparable;
    if (a_better) return Dominance::Dominates;
    if (b_better) return Dominance::DominatedBy;
    return Dominance::Equal;
}

bool weakly_dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("weakly_dominates: objective vectors differ in dimension");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
    }
    return true;
}

bool dominates(std::span<const double> a, std::span<const double> b) {
    return compare(a, b) == Dominance::Dominates;
}

std::vector<ObjectiveVector> nondominated_filter(std::span<const double> flat, int dim) {
    if (dim <= 0 || flat.size() % static_cast<std::size_t>(dim) != 0) {
        throw std::invalid_argument("nondominated_filter: buffer is not a whole number of vectors");
    }
    const std::size_t count = flat.size() / dim;
    auto row = [&](std::size_t i) { return flat.data() + i * dim; };
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(row(b), row(b) + dim, row(a), row(a) + dim);
    });
    // In decreasing lexicographic order a point can only be weakly dominated
    // by points already seen, so one pass against the kept set suffices.
    std::vector<double> kept;
    for (std::size_t i : order) {
        const double* p = row(i);
        bool covered = false;
        for (std::size_t s = 0; s < kept.size() && !covered; s += dim) {
            covered = true;
            for (int c = 0; c < dim; ++c) {
                if (kept[s + c] < p[c]) {
                    covered = false;
                    break;
                }
            }
        }
        if (!covered) kept.insert(kept.end(), p, p + dim);
    }
    std::vector<ObjectiveVector> out;
    out.reserve(kept.size() / dim);
    for (std::size_t s = 0; s < kept.size(); s += dim) {
        out.emplace_back(kept.begin() + s, kept.begin() + s + dim);
    }
    return out;
}

std::vector<ObjectiveVector> nondominated_filter(std::vector<ObjectiveVector> points) {
    if (points.empty()) return {};
    const std::size_t dim = points.front().size();
    std::vector<double> flat;
    flat.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.size() != dim) {
            throw std::invalid_argument("nondominated_filter: mixed dimensions");
        }
        flat.insert(flat.end(), p.begin(), p.end());
    }
    if (dim == 0) return {ObjectiveVector{}};
    return nondominated_filter(flat, static_cast<int>(dim));
}

std::uint64_t Archive::insert(Solution solution, ObjectiveVector objectives, bool visited) {
    if (entries_.empty() && values_.empty()) {
        dim_ = objectives.size();
    } else if (objectives.size() != dim_) {
        throw std::invalid_argument("archive: objective vector dimension mismatch");
    }
    values_.insert(values_.end(), objectives.begin(), objectives.end());
    const std::uint64_t index = next_index_++;
    entries_.push_back(ArchiveEntry{solution, std::move(objectives), visited, index});
    return index;
}

ArchiveEntry Archive::erase_at(std::size_t pos) {
    ArchiveEntry out = std::move(entries_.at(pos));
    const auto first = values_.begin() + static_cast<std::ptrdiff_t>(pos * dim_);
    values_.erase(first, first + static_cast<std::ptrdiff_t>(dim_));
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(pos));
    return out;
}

std::vector<ArchiveEntry> Archive::erase_positions(std::span<const std::size_t> positions) {
    std::vector<ArchiveEntry> removed;
    if (positions.empty()) return removed;
    removed.reserve(positions.size());
    std::size_t write = positions.front();
    std::size_t next = 0;
    for (std::size_t read = positions.front(); read < entries_.size(); ++read) {
        if (next < positions.size() && positions[next] == read) {
            removed.push_back(std::move(entries_[read]));
            ++next;
            continue;
        }
        if (write != read) {
            entries_[write] = std::move(entries_[read]);
            std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(read * dim_), dim_,
                        values_.begin() + static_cast<std::ptrdiff_t>(write * dim_));
        }
        ++write;
    }
    entries_.resize(write);
    values_.resize(write * dim_);
    return removed;
}

std::optional<std::size_t> Archive::find(std::uint64_t insertion_index) const {
    // Entries stay sorted by insertion index.
    auto it = std::lower_bound(entries_.begin(), entries_.end(), insertion_index,
                               [](const ArchiveEntry& e, std::uint64_t idx) { return e.insertion_index < idx; });
    if (it == entries_.end() || it->insertion_index != insertion_index) return std::nullopt;
    return static_cast<std::size_t>(it - entries_.begin());
}

std::size_t Archive::unvisited_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [](const ArchiveEntry& e) { return !e.visited; }));
}

bool Archive::contains_solution(const Solution& x) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const ArchiveEntry& e) { return e.solution == x; });
}

void Archive::check_invariants() const {
    if (capacity_ && entries_.size() > *capacity_) {
        throw std::logic_error("archive exceeds its capacity");
    }
    for (std::size_t a = 0; a < entries_.size(); ++a) {
        for (std::size_t b = a + 1; b < entries_.size(); ++b) {
            if (compare(entries_[a].objectives, entries_[b].objectives) != Dominance::Incomparable) {
                throw std::logic_error("archive entries are not mutually nondominated");
            }
        }
    }
}

std::vector<ObjectiveVector> Archive::images() const {
    std::vector<ObjectiveVector> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.objectives);
    return out;
}

std::vector<Solution> Archive::solutions() const {
    std::vector<Solution> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.solution);
    return out;
}

void Archive::write_snapshot(std::ostream& out) const {
    for (const auto& e : entries_) {
        out << e.solution.to_string();
        for (double v : e.objectives) out << ' ' << format_real(v);
        out << ' ' << (e.visited ? 1 : 0) << '\n';
    }
}

}  // namespace plo
