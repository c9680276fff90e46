#include "compmotion/group_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace compmotion {

std::string to_string(DistanceMetric m) {
    return m == DistanceMetric::Manhattan ? "manhattan" : "euclidean";
}

std::string to_string(Linkage l) {
    switch (l) {
        case Linkage::Complete: return "complete";
        case Linkage::Average: return "average";
        default: return "single";
    }
}

FeatureVector build_feature(const RelativePose& pose, JointId joint, const SubjectInfo& subject) {
    FeatureVector f;
    f.joint = joint;
    f.values.reserve(3 + joint_axis_count(joint) + 2);
    const Vec3& loc = pose.rel_location(joint);
    f.values.insert(f.values.end(), loc.begin(), loc.end());
    if (joint == JointId::Elbow) {
        f.values.push_back(pose.norm_angles[0]);
    } else {
        const int base = movement_axis_index(joint, AxisId::X);
        for (int d = 0; d < 3; ++d)
            f.values.push_back(pose.norm_angles[static_cast<std::size_t>(base + d)]);
    }
    f.values.push_back(subject.height_mm);
    f.values.push_back(subject.arm_length_mm);
    return f;
}

double point_distance(std::span<const double> a, std::span<const double> b, DistanceMetric metric) {
    if (a.size() != b.size())
        throw LengthMismatchError("point_distance: dimensions differ (" + std::to_string(a.size()) +
                                  " vs " + std::to_string(b.size()) + ")");
    double acc = 0.0;
    if (metric == DistanceMetric::Manhattan) {
        for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
        return acc;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

namespace {

// Class statistics accumulate relative to the class's first point so that a
// class of identical points yields an exactly-zero within scatter (the
// degenerate S_W == 0 detection relies on this).
struct ClassStats {
    std::vector<double> mean;  // absolute coordinates
    double within_scatter = 0.0;
};

ClassStats class_stats(std::span<const FeatureVector> features) {
    const std::vector<double>& origin = features.front().values;
    const std::size_t dim = origin.size();
    std::vector<double> shifted_mean(dim, 0.0);
    for (const auto& f : features)
        for (std::size_t i = 0; i < dim; ++i) shifted_mean[i] += f.values[i] - origin[i];
    for (auto& v : shifted_mean) v /= static_cast<double>(features.size());

    ClassStats stats;
    stats.mean.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) stats.mean[i] = origin[i] + shifted_mean[i];
    for (const auto& f : features) {
        for (std::size_t i = 0; i < dim; ++i) {
            const double d = (f.values[i] - origin[i]) - shifted_mean[i];
            stats.within_scatter += d * d;
        }
    }
    return stats;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace

SeparabilityResult separability(std::span<const FeatureVector> features_unbraced,
                                std::span<const FeatureVector> features_braced) {
    if (features_unbraced.size() != kSubjectCount || features_braced.size() != kSubjectCount)
        throw SubjectCountMismatchError("separability: expected 7 features per condition, got " +
                                        std::to_string(features_unbraced.size()) + " and " +
                                        std::to_string(features_braced.size()));
    const std::size_t dim = features_unbraced.front().dimension();
    for (const auto& f : features_unbraced)
        if (f.dimension() != dim) throw LengthMismatchError("separability: mixed feature dimensions");
    for (const auto& f : features_braced)
        if (f.dimension() != dim) throw LengthMismatchError("separability: mixed feature dimensions");

    const ClassStats stats_u = class_stats(features_unbraced);
    const ClassStats stats_b = class_stats(features_braced);
    std::vector<double> mean_all(dim);
    for (std::size_t i = 0; i < dim; ++i) mean_all[i] = 0.5 * (stats_u.mean[i] + stats_b.mean[i]);

    SeparabilityResult r;
    r.within_scatter = stats_u.within_scatter + stats_b.within_scatter;
    r.between_scatter = 7.0 * squared_distance(stats_u.mean, mean_all) +
                        7.0 * squared_distance(stats_b.mean, mean_all);

    if (r.within_scatter == 0.0) {
        r.degenerate = true;
        r.j = 0.0;
    } else {
        r.j = r.between_scatter / r.within_scatter;
    }
    return r;
}

namespace {

struct Cluster {
    std::vector<int> members;
    int rep = 0;  // smallest original index, the tie-break handle
    bool active = true;
};

}  // namespace

ClusterResult agglomerative_cluster_rows(std::span<const std::vector<double>> rows,
                                         ClusteringConfig config, int k) {
    const int n = static_cast<int>(rows.size());
    if (k < 1) throw Error("agglomerative_cluster: k must be >= 1");
    if (n < k)
        throw TooFewPointsError("agglomerative_cluster: " + std::to_string(n) + " point(s) for k=" +
                                std::to_string(k));
    const std::size_t dim = rows.empty() ? 0 : rows.front().size();
    for (const auto& row : rows)
        if (row.size() != dim) throw LengthMismatchError("agglomerative_cluster: mixed dimensions");

    // Cached point-pair distances; linkage updates run on cluster level.
    std::vector<std::vector<double>> dist(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    point_distance(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)],
                                   config.metric);

    std::vector<Cluster> clusters(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        clusters[static_cast<std::size_t>(i)].members = {i};
        clusters[static_cast<std::size_t>(i)].rep = i;
    }
    // Cluster-to-cluster linkage distances, Lance-Williams updated on merge.
    std::vector<std::vector<double>> cdist = dist;

    ClusterResult result;
    int active_count = n;
    while (active_count > k) {
        double best = std::numeric_limits<double>::infinity();
        int best_a = -1, best_b = -1;
        bool step_tie = false;
        for (int a = 0; a < n; ++a) {
            if (!clusters[static_cast<std::size_t>(a)].active) continue;
            for (int b = a + 1; b < n; ++b) {
                if (!clusters[static_cast<std::size_t>(b)].active) continue;
                const double d = cdist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                if (d < best) {
                    best = d;
                    best_a = a;
                    best_b = b;
                    step_tie = false;
                } else if (d == best) {
                    step_tie = true;
                    const int ra = clusters[static_cast<std::size_t>(a)].rep;
                    const int rb = clusters[static_cast<std::size_t>(b)].rep;
                    const int rba = clusters[static_cast<std::size_t>(best_a)].rep;
                    const int rbb = clusters[static_cast<std::size_t>(best_b)].rep;
                    const auto key = std::pair{std::min(ra, rb), std::max(ra, rb)};
                    const auto best_key = std::pair{std::min(rba, rbb), std::max(rba, rbb)};
                    if (key < best_key) {
                        best_a = a;
                        best_b = b;
                    }
                }
            }
        }
        result.had_ties = result.had_ties || step_tie;

        Cluster& ca = clusters[static_cast<std::size_t>(best_a)];
        Cluster& cb = clusters[static_cast<std::size_t>(best_b)];
        const double size_a = static_cast<double>(ca.members.size());
        const double size_b = static_cast<double>(cb.members.size());
        for (int c = 0; c < n; ++c) {
            if (!clusters[static_cast<std::size_t>(c)].active || c == best_a || c == best_b) continue;
            const double dac = cdist[static_cast<std::size_t>(best_a)][static_cast<std::size_t>(c)];
            const double dbc = cdist[static_cast<std::size_t>(best_b)][static_cast<std::size_t>(c)];
            double merged;
            switch (config.linkage) {
                case Linkage::Complete: merged = std::max(dac, dbc); break;
                case Linkage::Single: merged = std::min(dac, dbc); break;
                default: merged = (size_a * dac + size_b * dbc) / (size_a + size_b); break;
            }
            cdist[static_cast<std::size_t>(best_a)][static_cast<std::size_t>(c)] = merged;
            cdist[static_cast<std::size_t>(c)][static_cast<std::size_t>(best_a)] = merged;
        }
        ca.members.insert(ca.members.end(), cb.members.begin(), cb.members.end());
        ca.rep = std::min(ca.rep, cb.rep);
        cb.active = false;
        --active_count;
    }

    std::vector<const Cluster*> final_clusters;
    for (const auto& c : clusters)
        if (c.active) final_clusters.push_back(&c);
    std::sort(final_clusters.begin(), final_clusters.end(),
              [](const Cluster* a, const Cluster* b) { return a->rep < b->rep; });

    result.labels.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t ci = 0; ci < final_clusters.size(); ++ci)
        for (int m : final_clusters[ci]->members)
            result.labels[static_cast<std::size_t>(m)] = static_cast<int>(ci) + 1;
    return result;
}

ClusterResult agglomerative_cluster(std::span<const FeatureVector> points, ClusteringConfig config,
                                    int k) {
    std::vector<std::vector<double>> rows;
    rows.reserve(points.size());
    for (const auto& p : points) rows.push_back(p.values);
    return agglomerative_cluster_rows(rows, config, k);
}

double clustering_accuracy(std::span<const int> labels, std::span<const Condition> truth) {
    if (labels.size() != truth.size() || labels.empty())
        throw LengthMismatchError("clustering_accuracy: " + std::to_string(labels.size()) +
                                  " label(s) vs " + std::to_string(truth.size()) + " condition(s)");
    std::size_t matched = 0;  // cluster 1 <-> unbraced, cluster 2 <-> braced
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool unbraced = truth[i] == Condition::Unbraced;
        if ((labels[i] == 1 && unbraced) || (labels[i] != 1 && !unbraced)) ++matched;
    }
    const std::size_t best = std::max(matched, labels.size() - matched);
    return static_cast<double>(best) / static_cast<double>(labels.size());
}

ClusteringScore clustering_score(std::span<const FeatureVector> features_unbraced,
                                 std::span<const FeatureVector> features_braced) {
    std::vector<FeatureVector> combined(features_unbraced.begin(), features_unbraced.end());
    combined.insert(combined.end(), features_braced.begin(), features_braced.end());
    std::vector<Condition> truth(features_unbraced.size(), Condition::Unbraced);
    truth.insert(truth.end(), features_braced.size(), Condition::Braced);

    ClusteringScore score;
    score.h = -1.0;
    for (const ClusteringConfig& config : kAllClusteringConfigs) {
        const ClusterResult clustered = agglomerative_cluster(combined, config, 2);
        const double h = clustering_accuracy(clustered.labels, truth);
        if (h > score.h) {
            score.h = h;
            score.winning_config = config;
            score.had_ties = clustered.had_ties;
        }
    }
    return score;
}

namespace {

void zscore_in_place(std::vector<FeatureVector>& points) {
    if (points.empty()) return;
    const std::size_t dim = points.front().dimension();
    for (std::size_t i = 0; i < dim; ++i) {
        double mean = 0.0;
        for (const auto& p : points) mean += p.values[i];
        mean /= static_cast<double>(points.size());
        double var = 0.0;
        for (const auto& p : points) {
            const double d = p.values[i] - mean;
            var += d * d;
        }
        const double sd = std::sqrt(var / static_cast<double>(points.size()));
        for (auto& p : points) p.values[i] = sd > 0.0 ? (p.values[i] - mean) / sd : 0.0;
    }
}

}  // namespace

GroupScores group_scores(std::span<const RelativePose> poses_unbraced,
                         std::span<const RelativePose> poses_braced,
                         std::span<const SubjectInfo> subjects, const GroupOptions& options) {
    if (poses_unbraced.size() != kSubjectCount || poses_braced.size() != kSubjectCount ||
        subjects.size() != kSubjectCount)
        throw SubjectCountMismatchError("group_scores: expected 7 poses per condition and 7 subjects");

    GroupScores scores;
    std::array<double, kJointCount> per_joint_j{};
    std::array<double, kJointCount> per_joint_h{};
    for (std::size_t j = 0; j < kJointCount; ++j) {
        const JointId joint = static_cast<JointId>(j);
        std::vector<FeatureVector> u, b;
        u.reserve(kSubjectCount);
        b.reserve(kSubjectCount);
        for (std::size_t s = 0; s < kSubjectCount; ++s) {
            u.push_back(build_feature(poses_unbraced[s], joint, subjects[s]));
            b.push_back(build_feature(poses_braced[s], joint, subjects[s]));
        }
        if (options.zscore_features) {
            std::vector<FeatureVector> all(u);
            all.insert(all.end(), b.begin(), b.end());
            zscore_in_place(all);
            std::copy(all.begin(), all.begin() + kSubjectCount, u.begin());
            std::copy(all.begin() + kSubjectCount, all.end(), b.begin());
        }
        scores.separability_per_joint[j] = separability(u, b);
        scores.clustering_per_joint[j] = clustering_score(u, b);
        per_joint_j[j] = scores.separability_per_joint[j].j;
        per_joint_h[j] = scores.clustering_per_joint[j].h;
        scores.any_degenerate = scores.any_degenerate || scores.separability_per_joint[j].degenerate;
        scores.any_ties = scores.any_ties || scores.clustering_per_joint[j].had_ties;
    }
    scores.j = options.joint_weights.apply(per_joint_j);
    scores.h = options.joint_weights.apply(per_joint_h);
    return scores;
}

}  // namespace compmotion
