#pragma once

#include <span>

#include "compmotion/preprocess.hpp"

namespace compmotion {

/// Joint location standard deviation at one (target, condition): the mean
/// over joints of the per-joint spread of the 7 relative locations.
///
/// std of a set of 3-vectors is the root mean squared distance to the
/// centroid (population convention, divide by 7); `sample_std` switches to
/// the divide-by-6 convention.
double location_std(std::span<const RelativePose> poses, bool sample_std = false);

/// Joint angle standard deviation at one (target, condition):
/// (std(e.x) + mean_d std(s.d) + mean_d std(t.d)) / 3 over the 7 subjects'
/// normalized angles. Population convention by default.
double angle_std(std::span<const RelativePose> poses, bool sample_std = false);

}  // namespace compmotion
