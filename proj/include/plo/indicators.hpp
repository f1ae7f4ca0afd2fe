#pragma once

// Quality of an approximation set A against the exact Pareto front P, both
// given as objective-space images under maximization.

#include <span>

#include "plo/hypervolume.hpp"

namespace plo {

/// (hv(P) - hv(A)) / hv(P), origin reference point. Throws
/// std::invalid_argument when hv(P) is zero.
double hvr(std::span<const ObjectiveVector> approximation, std::span<const ObjectiveVector> front);

/// Same, with hv(P) supplied by the caller (cached per instance).
double hvr(std::span<const ObjectiveVector> approximation, double front_hypervolume);

/// Smallest factor by which A must be scaled up to weakly dominate P:
/// max over p of min over a of max over i of p_i / a_i. Throws
/// std::invalid_argument if A is empty or has a zero coordinate.
double mult_epsilon(std::span<const ObjectiveVector> approximation, std::span<const ObjectiveVector> front);

}  // namespace plo
