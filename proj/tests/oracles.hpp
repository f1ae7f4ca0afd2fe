#pragma once

// Brute-force reference implementations used by the unit and acceptance
// tests. Written for obviousness, not speed; none of them calls into the
// library routine it is meant to check.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "plo/landscape.hpp"

namespace oracle {

using Vec = std::vector<double>;

// f_i(x) = (1/n) sum_j c^i_j(x_j, x_{j1}, ..., x_{jk}), own bit first.
inline Vec naive_evaluate(const plo::Instance& inst, std::uint32_t bits) {
    const int n = inst.n();
    Vec f(inst.m());
    for (int i = 0; i < inst.m(); ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            std::size_t row = (bits >> j) & 1U;
            for (int partner : inst.links(j)) row = (row << 1) | ((bits >> partner) & 1U);
            sum += inst.table(i, j)[row];
        }
        f[i] = sum / n;
    }
    return f;
}

inline bool geq(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
    }
    return true;
}

inline bool strictly_dominates(const Vec& a, const Vec& b) { return geq(a, b) && a != b; }

// All-pairs scan; keeps the first copy of duplicates, sorts descending.
inline std::vector<Vec> brute_nondominated(const std::vector<Vec>& pts) {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < pts.size() && keep; ++j) {
            if (strictly_dominates(pts[j], pts[i])) keep = false;
            if (j < i && pts[j] == pts[i]) keep = false;
        }
        if (keep) out.push_back(pts[i]);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// Union of boxes [0, p] by inclusion-exclusion over all nonempty subsets.
inline double inclusion_exclusion_hv(const std::vector<Vec>& pts) {
    const std::size_t count = pts.size();
    if (count == 0) return 0.0;
    const std::size_t dim = pts.front().size();
    double total = 0.0;
    for (std::uint32_t mask = 1; mask < (1U << count); ++mask) {
        Vec meet(dim, std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < count; ++i) {
            if (!(mask >> i & 1U)) continue;
            for (std::size_t c = 0; c < dim; ++c) meet[c] = std::min(meet[c], pts[i][c]);
        }
        double vol = 1.0;
        for (double v : meet) vol *= v;
        total += (std::popcount(mask) % 2 == 1) ? vol : -vol;
    }
    return total;
}

inline double naive_epsilon(const std::vector<Vec>& a_set, const std::vector<Vec>& p_set) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& p : p_set) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& a : a_set) {
            double factor = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < p.size(); ++i) factor = std::max(factor, p[i] / a[i]);
            best = std::min(best, factor);
        }
        worst = std::max(worst, best);
    }
    return worst;
}

// Grid coverage checked literally: box_b(v) = floor(v / 2^b).
inline bool covered_at(const std::vector<std::uint32_t>& q, const std::vector<std::uint32_t>& p, int b) {
    for (std::size_t c = 0; c < q.size(); ++c) {
        const std::uint64_t qb = b >= 32 ? 0 : (std::uint64_t{q[c]} >> b);
        const std::uint64_t pb = b >= 32 ? 0 : (std::uint64_t{p[c]} >> b);
        if (qb < pb) return false;
    }
    return true;
}

struct LevelScan {
    int level = -1;
    std::vector<bool> covered;
};

// Scan b = 0, 1, ..., depth until some point is covered by another.
inline LevelScan level_scan(const std::vector<std::vector<std::uint32_t>>& pts, int depth) {
    LevelScan out;
    for (int b = 0; b <= depth; ++b) {
        std::vector<bool> covered(pts.size(), false);
        bool any = false;
        for (std::size_t p = 0; p < pts.size(); ++p) {
            for (std::size_t q = 0; q < pts.size(); ++q) {
                if (q != p && covered_at(pts[q], pts[p], b)) covered[p] = true;
            }
            any = any || covered[p];
        }
        if (any) {
            out.level = b;
            out.covered = covered;
            return out;
        }
    }
    return out;
}

// Random mutually nondominated set on an (m-1)-simplex-like surface.
template <class Rng>
std::vector<Vec> random_front(Rng& rng, int count, int dim) {
    std::vector<Vec> pts;
    while (static_cast<int>(pts.size()) < count) {
        Vec v(dim);
        double norm = 0.0;
        for (auto& x : v) {
            x = 0.05 + 0.9 * rng.uniform01();
            norm += x * x;
        }
        for (auto& x : v) x = 0.95 * x / std::sqrt(norm);
        bool ok = true;
        for (const auto& q : pts) {
            if (geq(q, v) || geq(v, q)) ok = false;
        }
        if (ok) pts.push_back(v);
    }
    return pts;
}

}  // namespace oracle
