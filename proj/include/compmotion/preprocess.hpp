#pragma once

#include <span>
#include <vector>

#include "compmotion/types.hpp"

namespace compmotion {

/// A preprocessed final pose: joint locations relative to the mean initial
/// location of the (subject, condition) block, and joint angles expressed
/// as percent of the Normal Range of Motion.
struct RelativePose {
    std::array<Vec3, kJointCount> rel_locations{};
    std::array<double, kMovementAxisCount> norm_angles{};

    const Vec3& rel_location(JointId j) const { return rel_locations[static_cast<std::size_t>(j)]; }
    double norm_angle(JointId j, AxisId d) const {
        const int i = movement_axis_index(j, d);
        if (i < 0) throw Error("elbow has no " + to_code(d) + " movement axis");
        return norm_angles[static_cast<std::size_t>(i)];
    }
};

/// Component-wise mean of the initial joint locations across a block of
/// reaches (the subtraction reference shared by all 49 targets).
std::array<Vec3, kJointCount> mean_initial_locations(std::span<const FinalPose> initial_poses);

/// Subtracts the mean initial location from each of the 49 final joint
/// locations of one (subject, condition, orientation) block.
/// Throws CountMismatchError unless both spans hold exactly 49 poses.
std::vector<std::array<Vec3, kJointCount>> relativize_locations(
    std::span<const FinalPose> final_poses, std::span<const FinalPose> initial_poses);

/// As above but against a precomputed reference (used for the pooled
/// reference scope, where the mean spans both orientations).
std::vector<std::array<Vec3, kJointCount>> relativize_locations_with_reference(
    std::span<const FinalPose> final_poses, const std::array<Vec3, kJointCount>& reference);

/// norm_angle[j,d] = angle[j,d] / NROM[j,d] * 100.
std::array<double, kMovementAxisCount> normalize_angles(const FinalPose& pose, const NromTable& nrom);

}  // namespace compmotion
