#pragma once

#include <optional>

#include "compmotion/group_metrics.hpp"
#include "compmotion/types.hpp"

namespace compmotion {

/// Empirical normalization of the four index components. L is divided by
/// 100 and A by 10 so all components land in a comparable range; J and H
/// pass through. Weights default to the unweighted quarter each.
struct IndexConfig {
    double divisor_l = 100.0;
    double divisor_a = 10.0;
    std::array<double, 4> weights{0.25, 0.25, 0.25, 0.25};

    /// Throws ConfigError on non-positive divisors or weights that are
    /// negative or do not sum to 1.
    void validate() const;
};

/// I = w0*L/divisor_l + w1*A/divisor_a + w2*J + w3*H.
/// Throws FlaggedComponentError when a component is not finite.
double compensation_index(double location_deviation, double angle_difference, double separability,
                          double clustering_accuracy, const IndexConfig& config = {});

/// Everything computed for one target cell.
struct TargetMetrics {
    TargetId target{};

    std::array<double, kJointCount> location_deviation_per_joint{};
    double location_deviation = 0.0;  // L, mm

    std::array<double, kMovementAxisCount> angle_difference_per_axis{};
    std::array<double, kJointCount> angle_difference_per_joint{};
    double angle_difference = 0.0;  // A, percent-of-NROM units

    double location_std_unbraced = 0.0;
    double location_std_braced = 0.0;
    double angle_std_unbraced = 0.0;
    double angle_std_braced = 0.0;

    std::array<double, kJointCount> separability_per_joint{};
    double separability = 0.0;  // J
    std::array<bool, kJointCount> separability_degenerate{};

    std::array<double, kJointCount> clustering_accuracy_per_joint{};
    std::array<ClusteringConfig, kJointCount> winning_config{};
    std::array<bool, kJointCount> clustering_ties{};
    double clustering_accuracy = 0.0;  // H

    /// Unset when a degenerate separability flags the cell.
    std::optional<double> index;

    bool flagged() const { return !index.has_value(); }
};

}  // namespace compmotion
