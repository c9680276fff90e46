#include "compmotion/compensation.hpp"

#include <cmath>

namespace compmotion {

void IndexConfig::validate() const {
    if (!(divisor_l > 0.0) || !(divisor_a > 0.0))
        throw ConfigError("index divisors must be strictly positive");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ConfigError("index weights must be non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("index weights must sum to 1");
}

double compensation_index(double location_deviation, double angle_difference, double separability,
                          double clustering_accuracy, const IndexConfig& config) {
    config.validate();
    if (!std::isfinite(location_deviation) || !std::isfinite(angle_difference) ||
        !std::isfinite(separability) || !std::isfinite(clustering_accuracy))
        throw FlaggedComponentError("compensation_index: component not finite");
    return config.weights[0] * (location_deviation / config.divisor_l) +
           config.weights[1] * (angle_difference / config.divisor_a) +
           config.weights[2] * separability + config.weights[3] * clustering_accuracy;
}

}  // namespace compmotion
