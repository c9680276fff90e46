#include "compmotion/average_metrics.hpp"

#include <cmath>

namespace compmotion {

MeanPose mean_pose(std::span<const RelativePose> poses) {
    if (poses.size() != kSubjectCount)
        throw SubjectCountMismatchError("mean_pose: expected 7 poses, got " +
                                        std::to_string(poses.size()));
    MeanPose mean;
    for (const auto& p : poses) {
        for (std::size_t j = 0; j < kJointCount; ++j)
            mean.locations[j] = mean.locations[j] + p.rel_locations[j];
        for (std::size_t a = 0; a < kMovementAxisCount; ++a) mean.angles[a] += p.norm_angles[a];
    }
    for (auto& v : mean.locations) v = v / static_cast<double>(kSubjectCount);
    for (auto& a : mean.angles) a /= static_cast<double>(kSubjectCount);
    return mean;
}

LocationDeviation location_deviation(const MeanPose& mean_unbraced, const MeanPose& mean_braced,
                                     const JointWeights& joints) {
    LocationDeviation dev;
    for (std::size_t j = 0; j < kJointCount; ++j)
        dev.per_joint[j] = norm(mean_braced.locations[j] - mean_unbraced.locations[j]);
    dev.overall = joints.apply(dev.per_joint);
    return dev;
}

AngleDifference angle_difference(const MeanPose& mean_unbraced, const MeanPose& mean_braced,
                                 const JointWeights& joints, const AxisWeights& axes) {
    AngleDifference diff;
    for (std::size_t a = 0; a < kMovementAxisCount; ++a)
        diff.per_axis[a] = std::abs(mean_braced.angles[a] - mean_unbraced.angles[a]);

    diff.per_joint[static_cast<std::size_t>(JointId::Elbow)] = diff.per_axis[0];
    for (JointId j : {JointId::Shoulder, JointId::Trunk}) {
        double acc = 0.0;
        for (int d = 0; d < 3; ++d) {
            const int i = movement_axis_index(j, static_cast<AxisId>(d));
            acc += axes.w[static_cast<std::size_t>(d)] * diff.per_axis[static_cast<std::size_t>(i)];
        }
        diff.per_joint[static_cast<std::size_t>(j)] = acc;
    }
    diff.overall = joints.apply(diff.per_joint);
    return diff;
}

}  // namespace compmotion
