#include "compmotion/preprocess.hpp"

namespace compmotion {

std::array<Vec3, kJointCount> mean_initial_locations(std::span<const FinalPose> initial_poses) {
    if (initial_poses.empty()) throw CountMismatchError("mean_initial_locations: empty block");
    std::array<Vec3, kJointCount> sum{};
    for (const auto& pose : initial_poses)
        for (std::size_t j = 0; j < kJointCount; ++j) sum[j] = sum[j] + pose.locations[j];
    for (auto& v : sum) v = v / static_cast<double>(initial_poses.size());
    return sum;
}

std::vector<std::array<Vec3, kJointCount>> relativize_locations(
    std::span<const FinalPose> final_poses, std::span<const FinalPose> initial_poses) {
    if (final_poses.size() != kTargetCount || initial_poses.size() != kTargetCount)
        throw CountMismatchError("relativize_locations: expected 49 final and 49 initial poses, got " +
                                 std::to_string(final_poses.size()) + " and " +
                                 std::to_string(initial_poses.size()));
    return relativize_locations_with_reference(final_poses, mean_initial_locations(initial_poses));
}

std::vector<std::array<Vec3, kJointCount>> relativize_locations_with_reference(
    std::span<const FinalPose> final_poses, const std::array<Vec3, kJointCount>& reference) {
    std::vector<std::array<Vec3, kJointCount>> out;
    out.reserve(final_poses.size());
    for (const auto& pose : final_poses) {
        std::array<Vec3, kJointCount> rel;
        for (std::size_t j = 0; j < kJointCount; ++j) rel[j] = pose.locations[j] - reference[j];
        out.push_back(rel);
    }
    return out;
}

std::array<double, kMovementAxisCount> normalize_angles(const FinalPose& pose, const NromTable& nrom) {
    std::array<double, kMovementAxisCount> out{};
    for (std::size_t a = 0; a < kMovementAxisCount; ++a)
        out[a] = pose.angles[a] / nrom.degrees(a) * 100.0;
    return out;
}

}  // namespace compmotion
