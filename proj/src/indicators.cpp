#include "plo/indicators.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace plo {

double hvr(std::span<const ObjectiveVector> approximation, double front_hypervolume) {
    if (!(front_hypervolume > 0.0)) {
        throw std::invalid_argument("hvr: the front has zero hypervolume");
    }
    return (front_hypervolume - hypervolume(approximation)) / front_hypervolume;
}

double hvr(std::span<const ObjectiveVector> approximation, std::span<const ObjectiveVector> front) {
    return hvr(approximation, hypervolume(front));
}

double mult_epsilon(std::span<const ObjectiveVector> approximation, std::span<const ObjectiveVector> front) {
    if (approximation.empty()) {
        throw std::invalid_argument("mult_epsilon: empty approximation set");
    }
    if (front.empty()) {
        throw std::invalid_argument("mult_epsilon: empty reference front");
    }
    const std::size_t dim = approximation.front().size();
    for (const auto& a : approximation) {
        if (a.size() != dim) throw std::invalid_argument("mult_epsilon: mixed dimensions");
        for (double v : a) {
            if (!(v > 0.0)) {
                throw std::invalid_argument("mult_epsilon: approximation has a non-positive coordinate");
            }
        }
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& p : front) {
        if (p.size() != dim) throw std::invalid_argument("mult_epsilon: mixed dimensions");
        double best = std::numeric_limits<double>::infinity();
        for (const auto& a : approximation) {
            double factor = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < dim; ++i) {
                factor = std::max(factor, p[i] / a[i]);
                if (factor >= best) break;
            }
            best = std::min(best, factor);
            // This p can no longer raise the maximum.
            if (best <= worst) break;
        }
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace plo
