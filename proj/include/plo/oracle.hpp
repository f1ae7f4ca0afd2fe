#pragma once

// Ground truth by exhaustive enumeration of {0,1}^n: the exact Pareto
// front, the census of Pareto local optima, and verifiers for (maximal)
// Pareto local optimal sets under the 1-bit-flip neighborhood.

#include <cstdint>
#include <span>
#include <vector>

#include "plo/landscape.hpp"

namespace plo {

inline constexpr int kMaxEnumerationBits = 24;

struct EnumerationResult {
    int n = 0;
    int m = 0;
    /// 2^n rows of m values; row p is the image of the solution with bits p.
    std::vector<double> all_vectors;
    /// Nondominated images, lexicographically decreasing.
    std::vector<ObjectiveVector> pareto_front;
    /// Number of solutions whose image lies on the front.
    std::size_t pareto_set_size = 0;

    std::size_t size() const { return std::size_t{1} << n; }
    std::span<const double> image(std::uint32_t bits) const {
        return {all_vectors.data() + static_cast<std::size_t>(bits) * m, static_cast<std::size_t>(m)};
    }
};

/// Evaluates every solution. Refuses n > 24. With workers > 1 the index
/// range is split into contiguous chunks; the result does not depend on it.
EnumerationResult enumerate(const Instance& instance, unsigned workers = 1);

/// Solutions whose image is on the Pareto front, in increasing bit order.
std::vector<Solution> pareto_set(const EnumerationResult& result);

/// Solutions no neighbor of which strictly dominates them.
std::vector<Solution> census_plo_solutions(const Instance& instance);
std::vector<Solution> census_plo_solutions(const EnumerationResult& result);

/// True iff no 1-bit-flip neighbor of x dominates x.
bool is_plo(const Instance& instance, const Solution& x);

/// Nonempty, all members PLO, images pairwise nondominated and distinct.
bool is_plo_set(const Instance& instance, std::span<const Solution> set);

/// A PLO-set in which every neighbor of every member is weakly dominated by
/// some member.
bool is_maximal_plo_set(const Instance& instance, std::span<const Solution> set);

struct PloSetCheck {
    bool plo_set = false;
    bool maximal = false;  // only set when maximality was requested
};

/// Both checks with one evaluation of each member and neighbor.
PloSetCheck check_plo_set(const Instance& instance, std::span<const Solution> set, bool maximality);

}  // namespace plo
