#pragma once

#include <cstdint>
#include <string>

#include "compmotion/types.hpp"

namespace compmotion {

/// Parameters of the synthetic reaching generator: a torso-shoulder-elbow
/// chain solves a planar two-link placement of the wrist at each grid
/// target (with trunk translation covering the excess distance), and the
/// braced condition adds a systematic, spatially weighted distortion.
struct SynthParams {
    int n_subjects = 7;
    double height_min_mm = 1600.0;
    double height_max_mm = 1900.0;
    double arm_min_mm = 560.0;
    double arm_max_mm = 680.0;
    double grid_spacing_mm = 300.0;

    /// Magnitude of the braced-condition pose distortion (kappa).
    double compensation_gain = 1.0;
    /// Std of the per-subject strategy perturbation, shared by both
    /// conditions of a reach (mm on locations, 0.1x degrees on angles).
    double strategy_noise_mm = 5.0;

    /// Grid region (inclusive 1-indexed cell bounds) where the distortion
    /// has full magnitude; outside it is scaled by background_gain.
    int region_row_min = 1;
    int region_row_max = 3;
    int region_col_min = 1;
    int region_col_max = 3;
    double background_gain = 0.25;

    /// Trunk translation budget; targets needing more are unreachable.
    double max_trunk_travel_mm = 2000.0;

    std::uint64_t seed = 1;

    /// True when the target cell lies in the full-magnitude region.
    bool in_distorted_region(int row, int col) const {
        return row >= region_row_min && row <= region_row_max && col >= region_col_min &&
               col <= region_col_max;
    }
};

/// Full-factorial dataset (n_subjects x 2 conditions x 2 orientations x 49
/// targets) with 2-frame trajectories (rest pose, final pose). Deterministic
/// under the seed. Throws UnreachableTargetError when the grid exceeds the
/// arm geometry plus the trunk travel budget, and ConfigError on invalid
/// parameter combinations.
Dataset generate_dataset(const SynthParams& params);

/// Writes the canonical CSV layout (subjects.csv, nrom.csv, and one
/// reaches_s<S>_<c>_<orientation>.csv per block) into out_dir.
void write_dataset_csv(const Dataset& dataset, const std::string& out_dir);

}  // namespace compmotion
