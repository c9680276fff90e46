// Independent reference implementations used as test oracles. These
// deliberately avoid the library's code paths: distances are recomputed
// from coordinates at every step, means are accumulated in a different
// order, and formulas are transcribed directly.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "compmotion/group_metrics.hpp"

namespace oracles {

inline double manhattan(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::fabs(a[i] - b[i]);
    return d;
}

inline double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(d);
}

/// Naive O(N^3) agglomerator: every step rescans all active cluster pairs
/// and recomputes the linkage distance from the raw point lists (no cached
/// or updated cluster distances). Same tie rule as the engine: the pair
/// with the lexicographically smallest (min rep, max rep).
inline std::vector<int> naive_agglomerate(const std::vector<std::vector<double>>& points,
                                          compmotion::ClusteringConfig config, int k) {
    using compmotion::DistanceMetric;
    using compmotion::Linkage;

    const auto point_dist = [&](int i, int j) {
        return config.metric == DistanceMetric::Manhattan
                   ? manhattan(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)])
                   : euclidean(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
    };
    const auto linkage_dist = [&](const std::vector<int>& a, const std::vector<int>& b) {
        double best = config.linkage == Linkage::Single
                          ? std::numeric_limits<double>::infinity()
                          : (config.linkage == Linkage::Complete ? -1.0 : 0.0);
        for (int i : a) {
            for (int j : b) {
                const double d = point_dist(i, j);
                switch (config.linkage) {
                    case Linkage::Single: best = std::min(best, d); break;
                    case Linkage::Complete: best = std::max(best, d); break;
                    default: best += d; break;
                }
            }
        }
        if (config.linkage == Linkage::Average)
            best /= static_cast<double>(a.size()) * static_cast<double>(b.size());
        return best;
    };

    std::vector<std::vector<int>> clusters;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) clusters.push_back({i});

    while (static_cast<int>(clusters.size()) > k) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_a = 0, best_b = 1;
        std::pair<int, int> best_key{-1, -1};
        for (std::size_t a = 0; a < clusters.size(); ++a) {
            for (std::size_t b = a + 1; b < clusters.size(); ++b) {
                const double d = linkage_dist(clusters[a], clusters[b]);
                const int ra = *std::min_element(clusters[a].begin(), clusters[a].end());
                const int rb = *std::min_element(clusters[b].begin(), clusters[b].end());
                const std::pair<int, int> key{std::min(ra, rb), std::max(ra, rb)};
                if (d < best || (d == best && key < best_key)) {
                    best = d;
                    best_a = a;
                    best_b = b;
                    best_key = key;
                }
            }
        }
        clusters[best_a].insert(clusters[best_a].end(), clusters[best_b].begin(),
                                clusters[best_b].end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_b));
    }

    std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
        return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
    });
    std::vector<int> labels(points.size(), 0);
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (int m : clusters[c]) labels[static_cast<std::size_t>(m)] = static_cast<int>(c) + 1;
    return labels;
}

/// Textbook two-class Fisher criterion transcribed dimension-major: class
/// means, overall mean as the midpoint of the class means, within scatter
/// as summed squared norms to the own class mean.
inline double fisher_j(const std::vector<std::vector<double>>& u,
                       const std::vector<std::vector<double>>& b, bool* degenerate = nullptr) {
    const std::size_t dim = u.front().size();
    std::vector<double> mu(dim, 0.0), mb(dim, 0.0), mall(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        for (const auto& x : u) mu[i] += x[i];
        mu[i] /= static_cast<double>(u.size());
        for (const auto& x : b) mb[i] += x[i];
        mb[i] /= static_cast<double>(b.size());
        mall[i] = (mu[i] + mb[i]) / 2.0;
    }
    double sw = 0.0;
    for (const auto& x : u)
        for (std::size_t i = 0; i < dim; ++i) sw += (x[i] - mu[i]) * (x[i] - mu[i]);
    for (const auto& x : b)
        for (std::size_t i = 0; i < dim; ++i) sw += (x[i] - mb[i]) * (x[i] - mb[i]);
    double sb = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        sb += 7.0 * (mu[i] - mall[i]) * (mu[i] - mall[i]) +
              7.0 * (mb[i] - mall[i]) * (mb[i] - mall[i]);
    if (degenerate) *degenerate = sw == 0.0;
    return sw == 0.0 ? 0.0 : sb / sw;
}

inline std::vector<std::vector<double>> random_points(std::mt19937_64& rng, int n, int dim,
                                                      double lo = -10.0, double hi = 10.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<std::vector<double>> points(static_cast<std::size_t>(n));
    for (auto& p : points) {
        p.resize(static_cast<std::size_t>(dim));
        for (auto& v : p) v = dist(rng);
    }
    return points;
}

}  // namespace oracles
