#include "plo/hypervolume.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace plo {

namespace {

// Scratch buffers, one set per dimension. A call at dimension d only
// touches levels <= d, and fills level d-1 before recursing, so the
// buffers of the caller stay intact.
struct Level {
    std::vector<double> points;  // input of hv at this dimension, row-major
    std::vector<double> scratch;
    std::vector<std::uint32_t> order;
    std::vector<std::uint32_t> kept;
    std::vector<double> stair_x;
    std::vector<double> stair_y;
};

struct Workspace {
    std::vector<Level> levels;
    Level& at(int d) {
        if (static_cast<int>(levels.size()) <= d) levels.resize(static_cast<std::size_t>(d) + 1);
        return levels[static_cast<std::size_t>(d)];
    }
};

Workspace& workspace() {
    thread_local Workspace ws;
    return ws;
}

double box_volume(const double* p, int d) {
    double v = 1.0;
    for (int c = 0; c < d; ++c) v *= p[c];
    return v;
}

bool weakly_covers(const double* a, const double* b, int d) {
    for (int c = 0; c < d; ++c) {
        if (a[c] < b[c]) return false;
    }
    return true;
}

bool lex_greater(const double* a, const double* b, int d) {
    for (int c = 0; c < d; ++c) {
        if (a[c] != b[c]) return a[c] > b[c];
    }
    return false;
}

template <int D>
std::size_t remove_dominated_fixed(Level& level, std::size_t count) {
    using Row = std::array<double, D>;
    thread_local std::vector<Row> rows;
    rows.resize(count);
    const double* pts = level.points.data();
    for (std::size_t i = 0; i < count; ++i) std::copy_n(pts + i * D, D, rows[i].data());
    std::sort(rows.begin(), rows.end(), std::greater<>());
    double* out = level.points.data();
    std::size_t kept = 0;
    for (const Row& p : rows) {
        bool covered = false;
        for (std::size_t j = 0; j < kept && !covered; ++j) {
            const double* q = out + j * D;
            covered = true;
            for (int c = 0; c < D; ++c) {
                if (q[c] < p[c]) {
                    covered = false;
                    break;
                }
            }
        }
        if (!covered) std::copy_n(p.data(), D, out + kept++ * D);
    }
    return kept;
}

// Drops weakly dominated rows and duplicates from level.points and leaves
// the survivors in decreasing lexicographic order. Returns the new count.
std::size_t remove_dominated(Level& level, std::size_t count, int d) {
    switch (d) {
        case 2: return remove_dominated_fixed<2>(level, count);
        case 3: return remove_dominated_fixed<3>(level, count);
        case 4: return remove_dominated_fixed<4>(level, count);
        case 5: return remove_dominated_fixed<5>(level, count);
        case 6: return remove_dominated_fixed<6>(level, count);
        default: break;
    }
    const double* pts = level.points.data();
    level.order.resize(count);
    std::iota(level.order.begin(), level.order.end(), 0U);
    std::sort(level.order.begin(), level.order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return lex_greater(pts + a * d, pts + b * d, d); });
    level.kept.clear();
    for (std::uint32_t i : level.order) {
        const double* p = pts + static_cast<std::size_t>(i) * d;
        bool covered = false;
        for (std::uint32_t j : level.kept) {
            if (weakly_covers(pts + static_cast<std::size_t>(j) * d, p, d)) {
                covered = true;
                break;
            }
        }
        if (!covered) level.kept.push_back(i);
    }
    level.scratch.resize(level.kept.size() * d);
    double* out = level.scratch.data();
    for (std::uint32_t i : level.kept) {
        out = std::copy_n(pts + static_cast<std::size_t>(i) * d, d, out);
    }
    level.points.swap(level.scratch);
    return level.kept.size();
}

// Rows in decreasing lexicographic order, mutually nondominated.
double sweep_2d(const double* pts, std::size_t count) {
    double area = 0.0;
    double top = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double* p = pts + 2 * i;
        if (p[1] > top) {
            area += p[0] * (p[1] - top);
            top = p[1];
        }
    }
    return area;
}

// Accepts dominated and repeated rows. Sweep down the third coordinate
// while maintaining the 2-D staircase of
// the points seen so far (x ascending, y descending) and its area.
double sweep_3d(Level& level, std::size_t count) {
    const double* pts = level.points.data();
    level.order.resize(count);
    std::iota(level.order.begin(), level.order.end(), 0U);
    std::sort(level.order.begin(), level.order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const double* p = pts + a * 3;
        const double* q = pts + b * 3;
        if (p[2] != q[2]) return p[2] > q[2];
        return lex_greater(p, q, 2);
    });

    auto& xs = level.stair_x;
    auto& ys = level.stair_y;
    xs.clear();
    ys.clear();
    double area = 0.0;
    double volume = 0.0;
    double slab_top = 0.0;
    for (std::size_t t = 0; t < count; ++t) {
        const double* p = pts + static_cast<std::size_t>(level.order[t]) * 3;
        const double x = p[0];
        const double y = p[1];
        auto right = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
        if (right == xs.size() || ys[right] < y) {
            // Exclusive area of (x, y) against the staircase; staircase
            // points it dominates form a contiguous run ending at `right`.
            double height = (right == xs.size()) ? 0.0 : ys[right];
            std::size_t erase_last = right;
            if (right < xs.size() && xs[right] == x) ++erase_last;
            double edge = x;
            double gained = 0.0;
            std::size_t erase_first = right;
            for (;;) {
                if (erase_first == 0) {
                    gained += edge * (y - height);
                    break;
                }
                const std::size_t left = erase_first - 1;
                gained += (edge - xs[left]) * (y - height);
                if (ys[left] > y) break;
                height = ys[left];
                edge = xs[left];
                erase_first = left;
            }
            // Close the slab only when the area changes, so covered points
            // leave the result bit-for-bit unchanged.
            volume += area * (slab_top - p[2]);
            slab_top = p[2];
            area += gained;
            const auto first = static_cast<std::ptrdiff_t>(erase_first);
            const auto last = static_cast<std::ptrdiff_t>(erase_last);
            if (first == last) {
                xs.insert(xs.begin() + first, x);
                ys.insert(ys.begin() + first, y);
            } else {
                xs[erase_first] = x;
                ys[erase_first] = y;
                xs.erase(xs.begin() + first + 1, xs.begin() + last);
                ys.erase(ys.begin() + first + 1, ys.begin() + last);
            }
        }
    }
    return volume + area * slab_top;
}

template <int D>
void sort_by_last_fixed(Level& level, std::size_t count) {
    using Row = std::array<double, D>;
    thread_local std::vector<Row> rows;
    rows.resize(count);
    double* pts = level.points.data();
    for (std::size_t i = 0; i < count; ++i) std::copy_n(pts + i * D, D, rows[i].data());
    // Rows are distinct, so this total order matches a stable sort on the
    // last coordinate of the decreasing lexicographic input.
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a[D - 1] != b[D - 1]) return a[D - 1] < b[D - 1];
        return a > b;
    });
    for (std::size_t i = 0; i < count; ++i) std::copy_n(rows[i].data(), D, pts + i * D);
}

// Reorders rows (distinct, decreasing lexicographic) by ascending last
// coordinate, keeping the lexicographic order among ties.
void sort_by_last(Level& level, std::size_t count, int d) {
    switch (d) {
        case 4: return sort_by_last_fixed<4>(level, count);
        case 5: return sort_by_last_fixed<5>(level, count);
        case 6: return sort_by_last_fixed<6>(level, count);
        default: break;
    }
    const double* pts = level.points.data();
    level.order.resize(count);
    std::iota(level.order.begin(), level.order.end(), 0U);
    std::stable_sort(level.order.begin(), level.order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return pts[a * d + d - 1] < pts[b * d + d - 1];
    });
    level.scratch.resize(count * d);
    double* out = level.scratch.data();
    for (std::uint32_t i : level.order) out = std::copy_n(pts + static_cast<std::size_t>(i) * d, d, out);
    level.points.swap(level.scratch);
}

// Fixed-dimension versions of the routines above. They perform the same
// floating-point operations in the same order, without the index buffers.
template <int D>
using Row = std::array<double, D>;

template <int D>
double row_box(const Row<D>& p) {
    double v = 1.0;
    for (int c = 0; c < D; ++c) v *= p[c];
    return v;
}

template <int D>
double hv_rows(Row<D>* pts, std::size_t count);

double sweep_3d_rows(Row<3>* pts, std::size_t count) {
    std::sort(pts, pts + count, [](const Row<3>& p, const Row<3>& q) {
        if (p[2] != q[2]) return p[2] > q[2];
        if (p[0] != q[0]) return p[0] > q[0];
        return p[1] > q[1];
    });
    thread_local std::vector<double> xs, ys;
    xs.clear();
    ys.clear();
    double area = 0.0;
    double volume = 0.0;
    double slab_top = 0.0;
    for (std::size_t t = 0; t < count; ++t) {
        const Row<3>& p = pts[t];
        const double x = p[0];
        const double y = p[1];
        auto right = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
        if (right != xs.size() && ys[right] >= y) continue;
        double height = (right == xs.size()) ? 0.0 : ys[right];
        std::size_t erase_last = right;
        if (right < xs.size() && xs[right] == x) ++erase_last;
        double edge = x;
        double gained = 0.0;
        std::size_t erase_first = right;
        for (;;) {
            if (erase_first == 0) {
                gained += edge * (y - height);
                break;
            }
            const std::size_t left = erase_first - 1;
            gained += (edge - xs[left]) * (y - height);
            if (ys[left] > y) break;
            height = ys[left];
            edge = xs[left];
            erase_first = left;
        }
        volume += area * (slab_top - p[2]);
        slab_top = p[2];
        area += gained;
        const auto first = static_cast<std::ptrdiff_t>(erase_first);
        const auto last = static_cast<std::ptrdiff_t>(erase_last);
        if (first == last) {
            xs.insert(xs.begin() + first, x);
            ys.insert(ys.begin() + first, y);
        } else {
            xs[erase_first] = x;
            ys[erase_first] = y;
            xs.erase(xs.begin() + first + 1, xs.begin() + last);
            ys.erase(ys.begin() + first + 1, ys.begin() + last);
        }
    }
    return volume + area * slab_top;
}

template <int D>
std::size_t filter_rows(Row<D>* pts, std::size_t count) {
    std::sort(pts, pts + count, std::greater<>());
    std::size_t kept = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const Row<D>& p = pts[i];
        bool covered = false;
        for (std::size_t j = 0; j < kept && !covered; ++j) {
            covered = true;
            for (int c = 0; c < D; ++c) {
                if (pts[j][c] < p[c]) {
                    covered = false;
                    break;
                }
            }
        }
        if (!covered) pts[kept++] = p;
    }
    return kept;
}

template <int D>
double hv_rows(Row<D>* pts, std::size_t count) {
    if (count == 0) return 0.0;
    if (count == 1) return row_box<D>(pts[0]);
    if constexpr (D == 3) {
        return sweep_3d_rows(pts, count);
    } else {
        count = filter_rows<D>(pts, count);
        if (count == 1) return row_box<D>(pts[0]);
        if constexpr (D == 2) {
            double area = 0.0;
            double top = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                if (pts[i][1] > top) {
                    area += pts[i][0] * (pts[i][1] - top);
                    top = pts[i][1];
                }
            }
            return area;
        } else {
            std::sort(pts, pts + count, [](const Row<D>& a, const Row<D>& b) {
                if (a[D - 1] != b[D - 1]) return a[D - 1] < b[D - 1];
                return a > b;
            });
            constexpr int E = D - 1;
            // hv_rows<D> only recurses into hv_rows<E>, so one buffer per
            // dimension suffices.
            thread_local std::vector<Row<E>> below;
            if (below.size() < count) below.resize(count);
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < count; ++i) {
                const Row<D>& p = pts[i];
                const double z = p[E];
                if (z == 0.0) continue;
                bool covered = false;
                std::size_t n = 0;
                for (std::size_t j = i + 1; j < count && !covered; ++j) {
                    const Row<D>& q = pts[j];
                    bool q_covers = true;
                    Row<E>& out = below[n++];
                    for (int c = 0; c < E; ++c) {
                        const double v = std::min(p[c], q[c]);
                        q_covers = q_covers && v == p[c];
                        out[c] = v;
                    }
                    covered = q_covers;
                }
                if (covered) continue;
                double box = 1.0;
                for (int c = 0; c < E; ++c) box *= p[c];
                total += z * (box - hv_rows<E>(below.data(), count - i - 1));
            }
            const Row<D>& last = pts[count - 1];
            double box = 1.0;
            for (int c = 0; c < E; ++c) box *= last[c];
            total += last[E] * box;
            return total;
        }
    }
}

template <int D>
double hv_flat(const double* flat, std::size_t count) {
    thread_local std::vector<Row<D>> rows;
    if (rows.size() < count) rows.resize(count);
    for (std::size_t i = 0; i < count; ++i) std::copy_n(flat + i * D, D, rows[i].data());
    return hv_rows<D>(rows.data(), count);
}

// Hypervolume of the `count` rows held in ws.at(d).points. May reorder or
// shrink that buffer.
double hv_level(Workspace& ws, int d, std::size_t count) {
    Level& level = ws.at(d);
    switch (d) {
        case 2: return hv_flat<2>(level.points.data(), count);
        case 3: return hv_flat<3>(level.points.data(), count);
        case 4: return hv_flat<4>(level.points.data(), count);
        case 5: return hv_flat<5>(level.points.data(), count);
        case 6: return hv_flat<6>(level.points.data(), count);
        default: break;
    }
    if (count == 0) return 0.0;
    if (count == 1) return box_volume(level.points.data(), d);
    if (d == 1) {
        return *std::max_element(level.points.begin(), level.points.begin() + static_cast<std::ptrdiff_t>(count));
    }
    if (d == 3) return sweep_3d(level, count);
    count = remove_dominated(level, count, d);
    if (count == 1) return box_volume(level.points.data(), d);
    if (d == 2) return sweep_2d(level.points.data(), count);

    // Slice along the last coordinate, ascending; ties keep the
    // lexicographic order, so the traversal is canonical.
    sort_by_last(level, count, d);

    const int e = d - 1;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < count; ++i) {
        const double* pts = ws.at(d).points.data();
        const double* p = pts + i * d;
        const double z = p[e];
        if (z == 0.0) continue;
        // Limited set {min(p, q)} over the rows above p, projected to e dims.
        Level& below = ws.at(e);
        below.points.resize((count - i - 1) * e);
        double* out = below.points.data();
        bool covered = false;
        for (std::size_t j = i + 1; j < count && !covered; ++j) {
            const double* q = pts + j * d;
            bool q_covers = true;
            for (int c = 0; c < e; ++c) {
                const double v = std::min(p[c], q[c]);
                q_covers = q_covers && v == p[c];
                *out++ = v;
            }
            covered = q_covers;
        }
        if (covered) continue;
        total += z * (box_volume(p, e) - hv_level(ws, e, count - i - 1));
    }
    const double* last = ws.at(d).points.data() + (count - 1) * d;
    total += last[e] * box_volume(last, e);
    return total;
}

void check_input(std::span<const double> flat, int dim) {
    if (dim <= 0 || flat.size() % static_cast<std::size_t>(dim) != 0) {
        throw std::invalid_argument("hypervolume: buffer is not a whole number of vectors");
    }
    for (double v : flat) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("hypervolume: coordinates must be finite and non-negative");
        }
    }
}

std::vector<double> flatten(std::span<const ObjectiveVector> points) {
    std::vector<double> flat;
    if (points.empty()) return flat;
    const std::size_t dim = points.front().size();
    flat.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.size() != dim) {
            throw std::invalid_argument("hypervolume: points differ in dimension");
        }
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return flat;
}

// Exclusive volume of p with respect to the other rows of flat.
double exclusive_volume(Workspace& ws, std::span<const double> flat, int dim, std::size_t index) {
    const std::size_t count = flat.size() / dim;
    const double* p = flat.data() + index * dim;
    Level& level = ws.at(dim);
    level.points.resize((count - 1) * dim);
    double* out = level.points.data();
    for (std::size_t j = 0; j < count; ++j) {
        if (j == index) continue;
        const double* q = flat.data() + j * dim;
        bool q_covers = true;
        for (int c = 0; c < dim; ++c) {
            const double v = std::min(p[c], q[c]);
            q_covers = q_covers && v == p[c];
            *out++ = v;
        }
        if (q_covers) return 0.0;
    }
    return box_volume(p, dim) - hv_level(ws, dim, count - 1);
}

}  // namespace

double hypervolume(std::span<const double> flat, int dim) {
    check_input(flat, dim);
    Workspace& ws = workspace();
    Level& top = ws.at(dim);
    top.points.assign(flat.begin(), flat.end());
    // hv_level starts by sorting, so the result is independent of input order.
    return hv_level(ws, dim, flat.size() / dim);
}

double hypervolume(std::span<const ObjectiveVector> points) {
    if (points.empty()) return 0.0;
    const auto flat = flatten(points);
    return hypervolume(flat, static_cast<int>(points.front().size()));
}

std::vector<double> hv_contributions(std::span<const double> flat, int dim) {
    check_input(flat, dim);
    const std::size_t count = flat.size() / dim;
    std::vector<double> out(count);
    Workspace& ws = workspace();
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = exclusive_volume(ws, flat, dim, i);
    }
    return out;
}

double hv_contribution(std::span<const ObjectiveVector> points, std::size_t index) {
    if (index >= points.size()) {
        throw std::out_of_range("hv_contribution: index out of range");
    }
    const auto flat = flatten(points);
    const int dim = static_cast<int>(points.front().size());
    check_input(flat, dim);
    return exclusive_volume(workspace(), flat, dim, index);
}

std::vector<double> limited_set(std::span<const double> flat, int dim, std::size_t index) {
    check_input(flat, dim);
    const std::size_t count = flat.size() / dim;
    if (index >= count) {
        throw std::out_of_range("limited_set: index out of range");
    }
    const double* p = flat.data() + index * dim;
    Level& level = workspace().at(dim);
    level.points.resize((count - 1) * dim);
    double* out = level.points.data();
    for (std::size_t j = 0; j < count; ++j) {
        if (j == index) continue;
        const double* q = flat.data() + j * dim;
        for (int c = 0; c < dim; ++c) *out++ = std::min(p[c], q[c]);
    }
    const std::size_t kept = count > 1 ? remove_dominated(level, count - 1, dim) : 0;
    return {level.points.begin(), level.points.begin() + static_cast<std::ptrdiff_t>(kept * dim)};
}

double contribution_from_limited(std::span<const double> p, std::span<const double> limited) {
    const int dim = static_cast<int>(p.size());
    check_input(p, dim);
    check_input(limited, dim);
    Workspace& ws = workspace();
    ws.at(dim).points.assign(limited.begin(), limited.end());
    return box_volume(p.data(), dim) - hv_level(ws, dim, limited.size() / dim);
}

}  // namespace plo
