#include "plo/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "plo/pareto.hpp"

namespace plo {

namespace {

bool strictly_better(const double* a, const double* b, int m) {
    bool better = false;
    for (int i = 0; i < m; ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) better = true;
    }
    return better;
}

bool covers(const double* a, const double* b, int m) {
    for (int i = 0; i < m; ++i) {
        if (a[i] < b[i]) return false;
    }
    return true;
}

// Rows stored column-wise so that one vector can be tested against many rows
// without branching.
class ColumnRows {
public:
    ColumnRows(const std::vector<double>& rows, std::size_t count, std::size_t m)
        : count_(count), m_(m), columns_(rows.size()) {
        for (std::size_t r = 0; r < count; ++r) {
            for (std::size_t c = 0; c < m; ++c) columns_[c * count + r] = rows[r * m + c];
        }
    }

    // Whether one of the rows [0, last) weakly dominates y.
    bool any_covers(std::size_t last, const double* y) const {
        constexpr std::size_t kChunk = 64;
        std::uint8_t flags[kChunk];
        for (std::size_t first = 0; first < last; first += kChunk) {
            const std::size_t len = std::min(kChunk, last - first);
            std::fill_n(flags, len, std::uint8_t{1});
            for (std::size_t c = 0; c < m_; ++c) {
                const double* col = columns_.data() + c * count_ + first;
                const double bound = y[c];
                for (std::size_t q = 0; q < len; ++q) flags[q] &= static_cast<std::uint8_t>(col[q] >= bound);
            }
            std::uint8_t any = 0;
            for (std::size_t q = 0; q < len; ++q) any |= flags[q];
            if (any != 0) return true;
        }
        return false;
    }

private:
    std::size_t count_;
    std::size_t m_;
    std::vector<double> columns_;
};

}  // namespace

EnumerationResult enumerate(const Instance& instance, unsigned workers) {
    const int n = instance.n();
    if (n > kMaxEnumerationBits) {
        throw std::invalid_argument("enumerate: n=" + std::to_string(n) +
                                    " exceeds the enumeration limit of 24 bits; use a smaller instance");
    }
    EnumerationResult result;
    result.n = n;
    result.m = instance.m();
    const std::size_t total = result.size();
    const auto m = static_cast<std::size_t>(result.m);
    result.all_vectors.resize(total * m);

    auto fill = [&](std::size_t first, std::size_t last) {
        for (std::size_t p = first; p < last; ++p) {
            instance.evaluate(static_cast<std::uint32_t>(p),
                              std::span<double>(result.all_vectors.data() + p * m, m));
        }
    };
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(total)));
    if (workers == 1) {
        fill(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t first = std::min(total, w * chunk);
            const std::size_t last = std::min(total, first + chunk);
            pool.emplace_back(fill, first, last);
        }
        for (auto& t : pool) t.join();
    }

    result.pareto_front = nondominated_filter(result.all_vectors, result.m);
    const std::set<ObjectiveVector> front(result.pareto_front.begin(), result.pareto_front.end());
    for (std::size_t p = 0; p < total; ++p) {
        const auto img = result.image(static_cast<std::uint32_t>(p));
        if (front.contains(ObjectiveVector(img.begin(), img.end()))) ++result.pareto_set_size;
    }
    return result;
}

std::vector<Solution> pareto_set(const EnumerationResult& result) {
    const std::set<ObjectiveVector> front(result.pareto_front.begin(), result.pareto_front.end());
    std::vector<Solution> out;
    for (std::size_t p = 0; p < result.size(); ++p) {
        const auto img = result.image(static_cast<std::uint32_t>(p));
        if (front.contains(ObjectiveVector(img.begin(), img.end()))) {
            out.emplace_back(static_cast<std::uint32_t>(p), result.n);
        }
    }
    return out;
}

std::vector<Solution> census_plo_solutions(const EnumerationResult& result) {
    std::vector<Solution> out;
    for (std::size_t p = 0; p < result.size(); ++p) {
        const auto bits = static_cast<std::uint32_t>(p);
        const double* self = result.image(bits).data();
        bool local_optimum = true;
        for (int j = 0; j < result.n && local_optimum; ++j) {
            local_optimum = !strictly_better(result.image(bits ^ (1U << j)).data(), self, result.m);
        }
        if (local_optimum) out.emplace_back(bits, result.n);
    }
    return out;
}

std::vector<Solution> census_plo_solutions(const Instance& instance) {
    return census_plo_solutions(enumerate(instance));
}

bool is_plo(const Instance& instance, const Solution& x) {
    const int m = instance.m();
    std::vector<double> self(static_cast<std::size_t>(m));
    std::vector<double> other(static_cast<std::size_t>(m));
    instance.evaluate(x.bits(), self);
    for (int j = 0; j < instance.n(); ++j) {
        instance.evaluate(x.bits() ^ (1U << j), other);
        if (strictly_better(other.data(), self.data(), m)) return false;
    }
    return true;
}

PloSetCheck check_plo_set(const Instance& instance, std::span<const Solution> set, bool maximality) {
    PloSetCheck result;
    if (set.empty()) return result;
    const int n = instance.n();
    const auto m = static_cast<std::size_t>(instance.m());
    for (const auto& x : set) {
        if (x.size() != n) return result;
    }

    // Rows in decreasing lexicographic order: a row can only be weakly
    // dominated by an earlier one.
    std::vector<double> images(set.size() * m);
    for (std::size_t s = 0; s < set.size(); ++s) {
        instance.evaluate(set[s].bits(), std::span<double>(images.data() + s * m, m));
    }
    std::vector<std::size_t> order(set.size());
    for (std::size_t s = 0; s < set.size(); ++s) order[s] = s;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(images.data() + b * m, images.data() + (b + 1) * m,
                                            images.data() + a * m, images.data() + (a + 1) * m);
    });
    std::vector<double> sorted(images.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        std::copy_n(images.data() + order[r] * m, m, sorted.data() + r * m);
    }
    const int dim = static_cast<int>(m);
    const ColumnRows columns(sorted, order.size(), m);
    std::vector<double> leading(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) leading[r] = sorted[r * m];
    for (std::size_t r = 1; r < order.size(); ++r) {
        if (columns.any_covers(r, sorted.data() + r * m)) return result;
    }

    std::unordered_map<std::uint32_t, std::size_t> member;
    member.reserve(set.size() * 2);
    for (std::size_t s = 0; s < set.size(); ++s) member.emplace(set[s].bits(), s);
    std::unordered_set<std::uint32_t> checked;
    bool maximal = maximality;
    std::vector<double> image(m);
    for (std::size_t s = 0; s < set.size(); ++s) {
        const double* self = images.data() + s * m;
        for (int j = 0; j < n; ++j) {
            const std::uint32_t neighbor = set[s].bits() ^ (1U << j);
            instance.evaluate(neighbor, image);
            if (strictly_better(image.data(), self, dim)) return result;
            if (!maximal || covers(self, image.data(), dim) || member.contains(neighbor) ||
                !checked.insert(neighbor).second) {
                continue;
            }
            // Members next to the neighbor are the likely cover; otherwise
            // scan every row whose first objective is large enough.
            bool covered = false;
            for (int b = 0; b < n && !covered; ++b) {
                const auto it = member.find(neighbor ^ (1U << b));
                covered = it != member.end() && covers(images.data() + it->second * m, image.data(), dim);
            }
            if (!covered) {
                const auto prefix = std::partition_point(leading.begin(), leading.end(),
                                                         [&](double v) { return v >= image[0]; });
                covered = columns.any_covers(static_cast<std::size_t>(prefix - leading.begin()), image.data());
            }
            maximal = covered;
        }
    }
    result.plo_set = true;
    result.maximal = maximal;
    return result;
}

bool is_plo_set(const Instance& instance, std::span<const Solution> set) {
    return check_plo_set(instance, set, false).plo_set;
}

bool is_maximal_plo_set(const Instance& instance, std::span<const Solution> set) {
    return check_plo_set(instance, set, true).maximal;
}

}  // namespace plo
