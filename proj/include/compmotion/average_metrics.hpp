#pragma once

#include <span>

#include "compmotion/preprocess.hpp"
#include "compmotion/types.hpp"

namespace compmotion {

/// Per-joint weights used when aggregating joint-level values. Defaults to
/// the unweighted average of the three joints.
struct JointWeights {
    std::array<double, kJointCount> w{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

    double apply(const std::array<double, kJointCount>& per_joint) const {
        return w[0] * per_joint[0] + w[1] * per_joint[1] + w[2] * per_joint[2];
    }
};

/// Weights over the x/y/z movement axes of the shoulder and trunk when
/// aggregating angle differences. Defaults to the unweighted average.
struct AxisWeights {
    std::array<double, 3> w{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
};

/// Cross-subject mean of relative locations and normalized angles at one
/// (target, condition).
struct MeanPose {
    std::array<Vec3, kJointCount> locations{};
    std::array<double, kMovementAxisCount> angles{};
};

/// Component-wise arithmetic mean over the 7 subjects.
/// Throws SubjectCountMismatchError unless exactly 7 poses are given.
MeanPose mean_pose(std::span<const RelativePose> poses);

struct LocationDeviation {
    std::array<double, kJointCount> per_joint{};  // mm
    double overall = 0.0;                         // mm
};

/// Euclidean distance between the braced and unbraced mean joint locations,
/// averaged over joints per the configured weights.
LocationDeviation location_deviation(const MeanPose& mean_unbraced, const MeanPose& mean_braced,
                                     const JointWeights& joints = {});

struct AngleDifference {
    std::array<double, kMovementAxisCount> per_axis{};  // |braced - unbraced| per movement
    std::array<double, kJointCount> per_joint{};
    double overall = 0.0;
};

/// Absolute differences of mean normalized angles: elbow from flexion only,
/// shoulder/trunk averaged over their three axes, then averaged over joints.
AngleDifference angle_difference(const MeanPose& mean_unbraced, const MeanPose& mean_braced,
                                 const JointWeights& joints = {}, const AxisWeights& axes = {});

}  // namespace compmotion
