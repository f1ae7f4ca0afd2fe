#pragma once

// Exact hypervolume of a point set under maximization with the origin as
// reference point.
//
// The measure is computed by slicing along the last objective: with points
// sorted by that coordinate, hv = sum_i z_i * excl_i, where excl_i is the
// exclusive (m-1)-dimensional volume of point i with respect to the points
// above it. The exclusive volume is the box volume minus the hypervolume of
// the "limited" set {min(p_i, p_j)}, which recurses one dimension down.
// Dimensions 2 and 3 use direct sweeps.

#include <cstddef>
#include <span>
#include <vector>

#include "plo/landscape.hpp"

namespace plo {

/// Lebesgue measure of the union of boxes [0, p]. Empty input gives 0.
/// Throws std::invalid_argument on mixed dimensions or negative coordinates.
/// The result does not depend on the order of the points.
double hypervolume(std::span<const ObjectiveVector> points);

/// Flat row-major variant.
double hypervolume(std::span<const double> flat, int dim);

/// hv(points) - hv(points without points[index]).
double hv_contribution(std::span<const ObjectiveVector> points, std::size_t index);

/// Exclusive contribution of every point of a flat row-major buffer.
std::vector<double> hv_contributions(std::span<const double> flat, int dim);

/// Nondominated part of {min(p, q)} over the other rows q, p being row
/// `index`, in decreasing lexicographic order. The contribution of p is its
/// box volume minus the hypervolume of this set, and depends on nothing else.
std::vector<double> limited_set(std::span<const double> flat, int dim, std::size_t index);

/// Box volume of p minus hypervolume of its limited set.
double contribution_from_limited(std::span<const double> p, std::span<const double> limited);

}  // namespace plo
