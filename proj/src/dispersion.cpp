#include "compmotion/dispersion.hpp"

#include <cmath>

namespace compmotion {

namespace {

void require_seven(std::span<const RelativePose> poses, const char* op) {
    if (poses.size() != kSubjectCount)
        throw SubjectCountMismatchError(std::string(op) + ": expected 7 poses, got " +
                                        std::to_string(poses.size()));
}

double divisor(std::size_t n, bool sample_std) {
    return sample_std ? static_cast<double>(n - 1) : static_cast<double>(n);
}

}  // namespace

double location_std(std::span<const RelativePose> poses, bool sample_std) {
    require_seven(poses, "location_std");
    double acc = 0.0;
    for (std::size_t j = 0; j < kJointCount; ++j) {
        // Shifted accumulation: identical inputs give exactly zero spread.
        const Vec3& origin = poses.front().rel_locations[j];
        Vec3 centroid{};
        for (const auto& p : poses) centroid = centroid + (p.rel_locations[j] - origin);
        centroid = centroid / static_cast<double>(poses.size());
        double sq = 0.0;
        for (const auto& p : poses) {
            const Vec3 d = (p.rel_locations[j] - origin) - centroid;
            sq += dot(d, d);
        }
        acc += std::sqrt(sq / divisor(poses.size(), sample_std));
    }
    return acc / static_cast<double>(kJointCount);
}

namespace {

double scalar_std(std::span<const RelativePose> poses, std::size_t axis, bool sample_std) {
    const double origin = poses.front().norm_angles[axis];
    double mean = 0.0;
    for (const auto& p : poses) mean += p.norm_angles[axis] - origin;
    mean /= static_cast<double>(poses.size());
    double sq = 0.0;
    for (const auto& p : poses) {
        const double d = (p.norm_angles[axis] - origin) - mean;
        sq += d * d;
    }
    return std::sqrt(sq / divisor(poses.size(), sample_std));
}

}  // namespace

double angle_std(std::span<const RelativePose> poses, bool sample_std) {
    require_seven(poses, "angle_std");
    const double elbow = scalar_std(poses, 0, sample_std);
    double shoulder = 0.0, trunk = 0.0;
    for (std::size_t d = 0; d < 3; ++d) {
        shoulder += scalar_std(poses, 1 + d, sample_std);
        trunk += scalar_std(poses, 4 + d, sample_std);
    }
    return (elbow + shoulder / 3.0 + trunk / 3.0) / 3.0;
}

}  // namespace compmotion
