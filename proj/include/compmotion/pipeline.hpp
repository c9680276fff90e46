#pragma once

#include <string>
#include <vector>

#include "compmotion/compensation.hpp"
#include "compmotion/dispersion.hpp"
#include "compmotion/group_metrics.hpp"
#include "compmotion/ingest.hpp"
#include "compmotion/types.hpp"

namespace compmotion {

/// Scope of the mean-initial-location reference of Eq-style preprocessing:
/// per (subject, condition, orientation) block, or pooled over both
/// orientations of a (subject, condition).
enum class ReferenceScope : std::uint8_t { PerOrientation, Pooled };

struct ComputeOptions {
    ReferenceScope reference_scope = ReferenceScope::PerOrientation;
    IndexConfig index{};
    JointWeights joint_weights{};
    AxisWeights axis_weights{};
    bool zscore_features = false;
    bool sample_std = false;
    /// Worker threads over targets; any value produces identical results.
    int jobs = 1;
};

/// Runs the full metric pipeline for one orientation and returns the 49
/// TargetMetrics in target order. Requires complete 7-subject coverage of
/// the orientation.
std::vector<TargetMetrics> compute_metrics(const Dataset& dataset, Orientation orientation,
                                           const ComputeOptions& options = {});

/// Column layout of metrics_<orientation>.csv.
std::vector<std::string> metrics_csv_header();

std::string metrics_csv(const std::vector<TargetMetrics>& metrics);

/// Writes metrics_<orientation>.csv plus per-joint breakdown files
/// (joint_<e|s|t>_<orientation>.csv) into out_dir; returns the main path.
std::string write_metrics_files(const std::vector<TargetMetrics>& metrics, Orientation orientation,
                                const std::string& out_dir);

/// One column of a metrics CSV as heatmap-ready values; empty or "nan"
/// fields become flagged cells. Throws UnknownMetricError for a missing
/// column and Error when the file does not hold exactly 49 targets.
std::array<std::optional<double>, kTargetCount> metric_column_from_csv(const std::string& csv_path,
                                                                       const std::string& metric);

/// Numeric column names accepted by metric_column_from_csv.
std::vector<std::string> metric_column_names();

}  // namespace compmotion
