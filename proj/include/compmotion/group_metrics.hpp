#pragma once

#include <span>
#include <vector>

#include "compmotion/average_metrics.hpp"
#include "compmotion/preprocess.hpp"
#include "compmotion/types.hpp"

namespace compmotion {

/// Per-joint feature of one (subject, condition, target): relative joint
/// location (3), normalized angles (1 for elbow, 3 otherwise), then height
/// and arm length in mm. Dimension 6 for the elbow, 8 for shoulder/trunk.
struct FeatureVector {
    JointId joint = JointId::Elbow;
    std::vector<double> values;

    std::size_t dimension() const { return values.size(); }
};

FeatureVector build_feature(const RelativePose& pose, JointId joint, const SubjectInfo& subject);

enum class DistanceMetric : std::uint8_t { Manhattan = 0, Euclidean = 1 };
enum class Linkage : std::uint8_t { Complete = 0, Average = 1, Single = 2 };

std::string to_string(DistanceMetric m);
std::string to_string(Linkage l);

/// One metric/linkage combination for the 2-cluster agglomeration.
struct ClusteringConfig {
    DistanceMetric metric = DistanceMetric::Manhattan;
    Linkage linkage = Linkage::Complete;

    std::string name() const { return to_string(metric) + "-" + to_string(linkage); }
    friend bool operator==(ClusteringConfig a, ClusteringConfig b) {
        return a.metric == b.metric && a.linkage == b.linkage;
    }
};

/// The six combinations in canonical order: Manhattan before Euclidean,
/// complete before average before single.
inline constexpr std::array<ClusteringConfig, 6> kAllClusteringConfigs{{
    {DistanceMetric::Manhattan, Linkage::Complete},
    {DistanceMetric::Manhattan, Linkage::Average},
    {DistanceMetric::Manhattan, Linkage::Single},
    {DistanceMetric::Euclidean, Linkage::Complete},
    {DistanceMetric::Euclidean, Linkage::Average},
    {DistanceMetric::Euclidean, Linkage::Single},
}};

double point_distance(std::span<const double> a, std::span<const double> b, DistanceMetric metric);

/// Fisher-style two-class separability: within-class scatter S_W, scatter of
/// the class means around their unweighted midpoint S_B, and J = S_B / S_W.
/// `degenerate` marks S_W == 0, where the ratio is undefined; j is then 0
/// and callers must treat the cell as flagged.
struct SeparabilityResult {
    double j = 0.0;
    double within_scatter = 0.0;
    double between_scatter = 0.0;
    bool degenerate = false;
};

/// Throws SubjectCountMismatchError unless both classes hold 7 features and
/// LengthMismatchError when dimensions differ.
SeparabilityResult separability(std::span<const FeatureVector> features_unbraced,
                                std::span<const FeatureVector> features_braced);

/// Result of agglomerating down to k clusters. Labels are 1-based cluster
/// ids ordered by the smallest original point index in each cluster.
/// `had_ties` is set when any merge step saw more than one candidate pair
/// at the minimal linkage distance.
struct ClusterResult {
    std::vector<int> labels;
    bool had_ties = false;
};

/// Bottom-up agglomeration: start from singletons, repeatedly merge the two
/// clusters at minimal linkage distance until k remain. Linkage distances:
/// complete = max pairwise, average = mean over point pairs (UPGMA),
/// single = min pairwise. Ties are broken deterministically by the pair
/// whose (min member index, other min member index) is lexicographically
/// smallest. Throws TooFewPointsError when points.size() < k.
ClusterResult agglomerative_cluster(std::span<const FeatureVector> points, ClusteringConfig config,
                                    int k = 2);

/// Same engine on raw coordinate rows (all points must share a dimension).
ClusterResult agglomerative_cluster_rows(std::span<const std::vector<double>> rows,
                                         ClusteringConfig config, int k = 2);

/// Best-match accuracy: evaluate both cluster-to-condition assignments and
/// keep the larger correct count over N. Always in [0.5, 1] for 2 clusters.
double clustering_accuracy(std::span<const int> labels, std::span<const Condition> truth);

struct ClusteringScore {
    double h = 0.0;
    ClusteringConfig winning_config{};
    bool had_ties = false;
};

/// Runs all six metric/linkage combinations and keeps the highest accuracy;
/// ties between configs resolve to the earliest in canonical order.
ClusteringScore clustering_score(std::span<const FeatureVector> features_unbraced,
                                 std::span<const FeatureVector> features_braced);

/// Per-target group scores across the three joints.
struct GroupScores {
    std::array<SeparabilityResult, kJointCount> separability_per_joint{};
    std::array<ClusteringScore, kJointCount> clustering_per_joint{};
    double j = 0.0;  // weighted mean of the non-degenerate story is the caller's concern
    double h = 0.0;
    bool any_degenerate = false;
    bool any_ties = false;
};

struct GroupOptions {
    /// Standardize each feature dimension to zero mean / unit variance over
    /// the 14 points before separability and clustering. Default off: the
    /// feature mixes mm and percent scales as-is.
    bool zscore_features = false;
    JointWeights joint_weights{};
};

/// Builds per-joint features from the 7+7 relative poses and computes
/// separability and clustering scores. Subjects must be passed in the same
/// order as the poses of both conditions.
GroupScores group_scores(std::span<const RelativePose> poses_unbraced,
                         std::span<const RelativePose> poses_braced,
                         std::span<const SubjectInfo> subjects, const GroupOptions& options = {});

}  // namespace compmotion
