#include "plo/archivers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "plo/hypervolume.hpp"

namespace plo {

std::string_view archiver_name(ArchiverKind kind) {
    switch (kind) {
        case ArchiverKind::Unbounded: return "unb";
        case ArchiverKind::Hypervolume: return "hva";
        case ArchiverKind::MultiLevelGrid: return "mga";
    }
    return "?";
}

ArchiverKind parse_archiver(std::string_view name) {
    if (name == "unb") return ArchiverKind::Unbounded;
    if (name == "hva") return ArchiverKind::Hypervolume;
    if (name == "mga") return ArchiverKind::MultiLevelGrid;
    throw std::invalid_argument("unknown archiver '" + std::string(name) + "' (expected unb, hva or mga)");
}

AddResult unbounded_add(Archive& archive, const Solution& solution, ObjectiveVector objectives) {
    const std::size_t dim = objectives.size();
    if (!archive.empty() && dim != archive.dimension()) {
        throw std::invalid_argument("archive add: candidate dimension mismatch");
    }
    const double* cand = objectives.data();
    const auto values = archive.values();
    std::vector<std::size_t> dominated;
    for (std::size_t pos = 0; pos < archive.size(); ++pos) {
        const double* row = values.data() + pos * dim;
        bool row_ge = true;
        bool row_le = true;
        for (std::size_t c = 0; c < dim && (row_ge || row_le); ++c) {
            if (row[c] < cand[c]) row_ge = false;
            if (row[c] > cand[c]) row_le = false;
        }
        if (row_ge) return {};
        if (row_le) dominated.push_back(pos);
    }
    AddResult result;
    result.accepted = true;
    result.removed = archive.erase_positions(dominated);
    archive.insert(solution, std::move(objectives), false);
    return result;
}

namespace {

bool row_covers(const double* a, const double* b, int dim) {
    for (int c = 0; c < dim; ++c) {
        if (a[c] < b[c]) return false;
    }
    return true;
}

double row_box(const double* v, int dim) {
    double b = 1.0;
    for (int c = 0; c < dim; ++c) b *= v[c];
    return b;
}

// Adds row m to a nondominated set kept in decreasing lexicographic order.
// Returns false when some member weakly dominates m (the set is unchanged).
// Otherwise, if `exclusive` is given, it receives the exclusive volume of m
// against the old members.
bool merge_nondominated(std::vector<double>& set, const double* m, int dim, double* exclusive = nullptr) {
    const std::size_t rows = set.size() / dim;
    for (std::size_t i = 0; i < rows; ++i) {
        if (row_covers(set.data() + i * dim, m, dim)) return false;
    }
    if (exclusive) {
        thread_local std::vector<double> corner;
        corner.resize(set.size());
        for (std::size_t i = 0; i < set.size(); ++i) corner[i] = std::min(set[i], m[i % dim]);
        *exclusive = row_box(m, dim) - (rows ? hypervolume(corner, dim) : 0.0);
    }

    std::size_t write = 0;
    std::size_t at = rows;
    for (std::size_t i = 0; i < rows; ++i) {
        const double* q = set.data() + i * dim;
        if (row_covers(m, q, dim)) continue;
        if (at == rows && std::lexicographical_compare(q, q + dim, m, m + dim)) at = write;
        if (write != i) std::copy_n(q, dim, set.data() + write * dim);
        ++write;
    }
    if (at == rows) at = write;
    set.resize(write * dim);
    set.insert(set.begin() + static_cast<std::ptrdiff_t>(at * dim), m, m + dim);
    return true;
}

bool contains_row(const std::vector<double>& set, const double* m, int dim) {
    for (std::size_t s = 0; s < set.size(); s += dim) {
        if (std::equal(m, m + dim, set.data() + s)) return true;
    }
    return false;
}

// Absorbs rounding in the bounds below, far above the error of the
// hypervolume code on values in [0, 1].
constexpr double kBoundSlack = 1e-9;

// Position of the entry with the smallest contribution (ties: smallest
// vector). Cached limited sets are patched for the entries added and removed
// since the previous call. An entry whose limited set changed keeps only a
// lower bound: adding m lowers it by the exclusive volume of m against the
// old limited set (up to rounding), and removals never lower it. Exact values are computed in order
// of increasing bound until no bound can beat the best exact value, so the
// choice equals the one made from all exact contributions.
std::size_t cached_victim(const Archive& archive, HvaCache& cache) {
    const int dim = static_cast<int>(archive.dimension());
    const std::size_t count = archive.size();

    // Both sequences are sorted by insertion index.
    std::vector<HvaCache::Item> items(count);
    std::vector<ObjectiveVector> removed;
    std::vector<std::size_t> added;
    std::vector<bool> is_added(count, false);
    {
        std::size_t c = 0;
        for (std::size_t pos = 0; pos < count; ++pos) {
            const ArchiveEntry& entry = archive[pos];
            while (c < cache.items.size() && cache.items[c].index < entry.insertion_index) {
                removed.push_back(std::move(cache.items[c++].point));
            }
            if (c < cache.items.size() && cache.items[c].index == entry.insertion_index &&
                cache.items[c].point == entry.objectives) {
                items[pos] = std::move(cache.items[c++]);
            } else {
                if (c < cache.items.size() && cache.items[c].index == entry.insertion_index) {
                    removed.push_back(std::move(cache.items[c++].point));
                }
                is_added[pos] = true;
                added.push_back(pos);
            }
        }
        for (; c < cache.items.size(); ++c) removed.push_back(std::move(cache.items[c].point));
    }

    std::vector<double> m(static_cast<std::size_t>(dim));
    std::vector<double> lost;
    for (std::size_t pos = 0; pos < count; ++pos) {
        const ArchiveEntry& entry = archive[pos];
        HvaCache::Item& item = items[pos];
        if (is_added[pos]) {
            item.index = entry.insertion_index;
            item.point = entry.objectives;
            item.limited = limited_set(archive.values(), dim, pos);
            double sum = 0.0;
            for (std::size_t r = 0; r < item.limited.size(); r += dim) sum += row_box(item.limited.data() + r, dim);
            item.contribution = std::max(0.0, row_box(item.point.data(), dim) - sum) - kBoundSlack;
            item.exact = false;
            continue;
        }
        const double* p = item.point.data();
        // Rows of the limited set that a removed entry generated. Rows they
        // covered may resurface; a row not listed here still has a
        // generator among the remaining entries.
        lost.clear();
        for (const auto& r : removed) {
            for (int c = 0; c < dim; ++c) m[c] = std::min(p[c], r[c]);
            if (contains_row(item.limited, m.data(), dim) && !contains_row(lost, m.data(), dim)) {
                lost.insert(lost.end(), m.begin(), m.end());
            }
        }
        if (!lost.empty()) {
            std::vector<double> limited;
            limited.reserve(item.limited.size());
            for (std::size_t r = 0; r < item.limited.size(); r += dim) {
                if (!contains_row(lost, item.limited.data() + r, dim)) {
                    limited.insert(limited.end(), item.limited.begin() + r, item.limited.begin() + r + dim);
                }
            }
            for (std::size_t q = 0; q < count; ++q) {
                if (q == pos || is_added[q]) continue;
                for (int c = 0; c < dim; ++c) m[c] = std::min(p[c], archive[q].objectives[c]);
                bool resurfaces = false;
                for (std::size_t x = 0; x < lost.size() && !resurfaces; x += dim) {
                    resurfaces = row_covers(lost.data() + x, m.data(), dim);
                }
                if (resurfaces) merge_nondominated(limited, m.data(), dim);
            }
            if (limited != item.limited) {
                item.limited = std::move(limited);
                if (item.exact) item.contribution -= kBoundSlack;
                item.exact = false;
            }
        }
        for (std::size_t a : added) {
            for (int c = 0; c < dim; ++c) m[c] = std::min(p[c], archive[a].objectives[c]);
            double exclusive = 0.0;
            if (merge_nondominated(item.limited, m.data(), dim, &exclusive)) {
                item.contribution -= exclusive + kBoundSlack;
                item.exact = false;
            }
        }
    }

    std::optional<std::size_t> victim;
    auto consider = [&](std::size_t pos) {
        if (!victim || items[pos].contribution < items[*victim].contribution ||
            (items[pos].contribution == items[*victim].contribution &&
             items[pos].point < items[*victim].point)) {
            victim = pos;
        }
    };
    std::vector<std::size_t> pending;
    for (std::size_t pos = 0; pos < count; ++pos) {
        if (items[pos].exact) {
            consider(pos);
        } else {
            pending.push_back(pos);
        }
    }
    cache.hits += count - pending.size();
    std::sort(pending.begin(), pending.end(), [&](std::size_t a, std::size_t b) {
        if (items[a].contribution != items[b].contribution) return items[a].contribution < items[b].contribution;
        return a < b;
    });
    for (std::size_t pos : pending) {
        if (victim && items[pos].contribution > items[*victim].contribution) break;
        items[pos].contribution = contribution_from_limited(items[pos].point, items[pos].limited);
        items[pos].exact = true;
        ++cache.misses;
        consider(pos);
    }
    cache.items = std::move(items);
    return *victim;
}

}  // namespace

AddResult hva_add(Archive& archive, const Solution& solution, ObjectiveVector objectives, std::size_t mu,
                  HvaCache* cache) {
    AddResult result = unbounded_add(archive, solution, std::move(objectives));
    if (!result.accepted || archive.size() <= mu) return result;

    std::size_t victim = 0;
    if (cache) {
        victim = cached_victim(archive, *cache);
    } else {
        const auto contributions = hv_contributions(archive.values(), static_cast<int>(archive.dimension()));
        for (std::size_t pos = 1; pos < archive.size(); ++pos) {
            if (contributions[pos] < contributions[victim] ||
                (contributions[pos] == contributions[victim] && archive[pos].objectives < archive[victim].objectives)) {
                victim = pos;
            }
        }
    }
    if (victim + 1 == archive.size()) {
        // The candidate itself is the least useful point.
        archive.erase_at(victim);
        result.accepted = false;
        return result;
    }
    result.removed.push_back(archive.erase_at(victim));
    return result;
}

GridPoint discretize(std::span<const double> v, int depth) {
    if (depth < 0 || depth > 31) {
        throw std::invalid_argument("discretize: depth must lie in [0, 31]");
    }
    GridPoint out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] >= 0.0 && v[i] < 1.0)) {
            throw std::invalid_argument("discretize: value outside [0,1)");
        }
        out[i] = static_cast<std::uint32_t>(std::ldexp(v[i], depth));
    }
    return out;
}

int coverage_level(std::span<const std::uint32_t> q, std::span<const std::uint32_t> p) {
    // q >> b >= p >> b holds on a coordinate where q < p exactly when both
    // agree on every bit from b upward.
    int level = 0;
    for (std::size_t c = 0; c < q.size(); ++c) {
        if (q[c] < p[c]) {
            level = std::max(level, static_cast<int>(std::bit_width(q[c] ^ p[c])));
        }
    }
    return level;
}

namespace {

// Level at which each of `count` rows (flat, `dim` coordinates) is first
// covered by another row.
std::vector<int> first_covered_levels(const std::uint32_t* grid, std::size_t count, int dim) {
    std::vector<int> first(count, std::numeric_limits<int>::max());
    for (std::size_t p = 0; p < count; ++p) {
        const std::uint32_t* gp = grid + p * dim;
        int best = first[p];
        for (std::size_t q = 0; q < count; ++q) {
            if (q == p) continue;
            const std::uint32_t* gq = grid + q * dim;
            int level = 0;
            for (int c = 0; c < dim; ++c) {
                if (gq[c] < gp[c]) level = std::max(level, static_cast<int>(std::bit_width(gq[c] ^ gp[c])));
            }
            best = std::min(best, level);
        }
        first[p] = best;
    }
    return first;
}

GridCoverage coverage_from(const std::vector<int>& first) {
    GridCoverage out;
    out.level = *std::min_element(first.begin(), first.end());
    out.covered.resize(first.size());
    for (std::size_t p = 0; p < first.size(); ++p) out.covered[p] = first[p] == out.level;
    return out;
}

}  // namespace

GridCoverage critical_level(const std::vector<GridPoint>& points) {
    if (points.size() < 2) {
        throw std::invalid_argument("critical_level: need at least two points");
    }
    const std::size_t dim = points.front().size();
    std::vector<std::uint32_t> flat;
    flat.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.size() != dim) throw std::invalid_argument("critical_level: mixed dimensions");
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return coverage_from(first_covered_levels(flat.data(), points.size(), static_cast<int>(dim)));
}

namespace {

int pair_level(const std::uint32_t* q, const std::uint32_t* p, int dim) {
    int level = 0;
    for (int c = 0; c < dim; ++c) {
        if (q[c] < p[c]) level = std::max(level, static_cast<int>(std::bit_width(q[c] ^ p[c])));
    }
    return level;
}

// Brings the cached level matrix in line with the archive, computing pairs
// only for entries that are new since the previous call.
std::vector<int> cached_first_covered(const Archive& archive, MgaCache& cache) {
    const int dim = static_cast<int>(archive.dimension());
    const std::size_t count = archive.size();
    const std::size_t old_count = cache.index.size();
    std::vector<std::size_t> from(count, SIZE_MAX);  // old position or SIZE_MAX
    MgaCache next;
    next.index.resize(count);
    next.grid.resize(count * dim);
    std::size_t c = 0;
    for (std::size_t pos = 0; pos < count; ++pos) {
        const ArchiveEntry& entry = archive[pos];
        next.index[pos] = entry.insertion_index;
        const GridPoint g = discretize(entry.objectives);
        std::copy(g.begin(), g.end(), next.grid.begin() + static_cast<std::ptrdiff_t>(pos * dim));
        while (c < old_count && cache.index[c] < entry.insertion_index) ++c;
        if (c < old_count && cache.index[c] == entry.insertion_index &&
            std::equal(g.begin(), g.end(), cache.grid.begin() + static_cast<std::ptrdiff_t>(c * dim))) {
            from[pos] = c;
        }
    }
    next.level.resize(count * count);
    for (std::size_t p = 0; p < count; ++p) {
        const std::uint32_t* gp = next.grid.data() + p * dim;
        for (std::size_t q = 0; q < count; ++q) {
            std::uint8_t& out = next.level[p * count + q];
            if (p == q) {
                out = std::numeric_limits<std::uint8_t>::max();
            } else if (from[p] != SIZE_MAX && from[q] != SIZE_MAX) {
                out = cache.level[from[p] * old_count + from[q]];
            } else {
                out = static_cast<std::uint8_t>(pair_level(next.grid.data() + q * dim, gp, dim));
            }
        }
    }
    cache = std::move(next);
    std::vector<int> first(count);
    for (std::size_t p = 0; p < count; ++p) {
        const std::uint8_t* row = cache.level.data() + p * count;
        first[p] = *std::min_element(row, row + count);
    }
    return first;
}

}  // namespace

AddResult mga_add(Archive& archive, const Solution& solution, ObjectiveVector objectives, std::size_t mu,
                  MgaCache* cache) {
    AddResult result = unbounded_add(archive, solution, std::move(objectives));
    if (!result.accepted || archive.size() <= mu) return result;

    std::vector<int> first;
    if (cache) {
        first = cached_first_covered(archive, *cache);
    } else {
        const int dim = static_cast<int>(archive.dimension());
        std::vector<std::uint32_t> grid;
        grid.reserve(archive.values().size());
        for (const auto& entry : archive) {
            const GridPoint g = discretize(entry.objectives);
            grid.insert(grid.end(), g.begin(), g.end());
        }
        first = first_covered_levels(grid.data(), archive.size(), dim);
    }
    const GridCoverage coverage = coverage_from(first);
    const std::size_t candidate = archive.size() - 1;
    if (coverage.covered[candidate]) {
        archive.erase_at(candidate);
        result.accepted = false;
        return result;
    }
    // Entries are in insertion order, so the first covered one is the oldest.
    const auto it = std::find(coverage.covered.begin(), coverage.covered.end(), true);
    if (it == coverage.covered.end()) {
        throw std::logic_error("mga_add: no covered point at the critical level");
    }
    result.removed.push_back(archive.erase_at(static_cast<std::size_t>(it - coverage.covered.begin())));
    return result;
}

Archiver::Archiver(ArchiverKind kind, std::optional<std::size_t> mu) : kind_(kind), mu_(mu) {
    if (kind == ArchiverKind::Unbounded && mu) {
        throw std::invalid_argument("the unbounded archiver takes no capacity");
    }
    if (kind != ArchiverKind::Unbounded && (!mu || *mu == 0)) {
        throw std::invalid_argument("bounded archivers need a capacity mu >= 1");
    }
}

Archive Archiver::make_archive() const {
    return mu_ ? Archive(*mu_) : Archive();
}

AddResult Archiver::add(Archive& archive, const Solution& solution, ObjectiveVector objectives) {
    switch (kind_) {
        case ArchiverKind::Unbounded: return unbounded_add(archive, solution, std::move(objectives));
        case ArchiverKind::Hypervolume: return hva_add(archive, solution, std::move(objectives), *mu_, &hva_cache_);
        case ArchiverKind::MultiLevelGrid: return mga_add(archive, solution, std::move(objectives), *mu_, &mga_cache_);
    }
    throw std::logic_error("unreachable archiver kind");
}

}  // namespace plo
