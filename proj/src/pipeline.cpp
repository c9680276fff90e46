#include "compmotion/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "compmotion/average_metrics.hpp"
#include "compmotion/csv.hpp"
#include "compmotion/preprocess.hpp"

namespace compmotion {

namespace {

struct SubjectBlock {
    // RelativePose per target (0..48) for one (subject, condition).
    std::array<RelativePose, kTargetCount> poses;
};

using BlockTable = std::array<std::array<SubjectBlock, 2>, kSubjectCount>;

const ReachRecord* find_record(const Dataset& d, int subject, Condition c, Orientation o, int target) {
    for (const auto& r : d.records) {
        if (r.subject_id == subject && r.condition == c && r.orientation == o &&
            r.target.index == target)
            return &r;
    }
    return nullptr;
}

BlockTable preprocess_blocks(const Dataset& dataset, Orientation orientation,
                             const ComputeOptions& options) {
    if (dataset.subjects.size() != kSubjectCount)
        throw SubjectCountMismatchError("compute_metrics: expected 7 subjects, got " +
                                        std::to_string(dataset.subjects.size()));

    BlockTable table;
    for (std::size_t s = 0; s < kSubjectCount; ++s) {
        const int subject_id = dataset.subjects[s].subject_id;
        for (int ci = 0; ci < 2; ++ci) {
            const Condition c = static_cast<Condition>(ci);

            std::vector<FinalPose> finals, initials;
            finals.reserve(kTargetCount);
            initials.reserve(kTargetCount);
            for (int n = 1; n <= static_cast<int>(kTargetCount); ++n) {
                const ReachRecord* rec = find_record(dataset, subject_id, c, orientation, n);
                if (!rec)
                    throw Error("compute_metrics: missing record subject " + std::to_string(subject_id) +
                                " " + to_code(c) + " " + to_code(orientation) + " target " +
                                std::to_string(n));
                finals.push_back(extract_final_pose(*rec));
                initials.push_back(extract_initial_pose(*rec));
            }

            std::array<Vec3, kJointCount> reference;
            if (options.reference_scope == ReferenceScope::PerOrientation) {
                reference = mean_initial_locations(initials);
            } else {
                // Pooled: the mean spans the initial poses of both
                // orientations of this (subject, condition).
                std::vector<FinalPose> pooled = initials;
                const Orientation other = orientation == Orientation::Horizontal
                                              ? Orientation::Vertical
                                              : Orientation::Horizontal;
                for (int n = 1; n <= static_cast<int>(kTargetCount); ++n) {
                    const ReachRecord* rec = find_record(dataset, subject_id, c, other, n);
                    if (!rec)
                        throw Error("compute_metrics: pooled reference needs both orientations; "
                                    "missing subject " +
                                    std::to_string(subject_id) + " " + to_code(c) + " " +
                                    to_code(other) + " target " + std::to_string(n));
                    pooled.push_back(extract_initial_pose(*rec));
                }
                reference = mean_initial_locations(pooled);
            }

            const auto rel = relativize_locations_with_reference(finals, reference);
            for (std::size_t n = 0; n < kTargetCount; ++n) {
                RelativePose pose;
                pose.rel_locations = rel[n];
                pose.norm_angles = normalize_angles(finals[n], dataset.nrom);
                table[s][static_cast<std::size_t>(ci)].poses[n] = pose;
            }
        }
    }
    return table;
}

TargetMetrics compute_one_target(const BlockTable& table, const Dataset& dataset, int target,
                                 const ComputeOptions& options) {
    std::vector<RelativePose> u_poses, b_poses;
    u_poses.reserve(kSubjectCount);
    b_poses.reserve(kSubjectCount);
    for (std::size_t s = 0; s < kSubjectCount; ++s) {
        u_poses.push_back(table[s][0].poses[static_cast<std::size_t>(target - 1)]);
        b_poses.push_back(table[s][1].poses[static_cast<std::size_t>(target - 1)]);
    }

    TargetMetrics m;
    m.target = TargetId(target);

    const MeanPose mean_u = mean_pose(u_poses);
    const MeanPose mean_b = mean_pose(b_poses);
    const LocationDeviation loc = location_deviation(mean_u, mean_b, options.joint_weights);
    m.location_deviation_per_joint = loc.per_joint;
    m.location_deviation = loc.overall;

    const AngleDifference ang =
        angle_difference(mean_u, mean_b, options.joint_weights, options.axis_weights);
    m.angle_difference_per_axis = ang.per_axis;
    m.angle_difference_per_joint = ang.per_joint;
    m.angle_difference = ang.overall;

    m.location_std_unbraced = location_std(u_poses, options.sample_std);
    m.location_std_braced = location_std(b_poses, options.sample_std);
    m.angle_std_unbraced = angle_std(u_poses, options.sample_std);
    m.angle_std_braced = angle_std(b_poses, options.sample_std);

    GroupOptions group;
    group.zscore_features = options.zscore_features;
    group.joint_weights = options.joint_weights;
    const GroupScores scores = group_scores(u_poses, b_poses, dataset.subjects, group);
    for (std::size_t j = 0; j < kJointCount; ++j) {
        m.separability_per_joint[j] = scores.separability_per_joint[j].j;
        m.separability_degenerate[j] = scores.separability_per_joint[j].degenerate;
        m.clustering_accuracy_per_joint[j] = scores.clustering_per_joint[j].h;
        m.winning_config[j] = scores.clustering_per_joint[j].winning_config;
        m.clustering_ties[j] = scores.clustering_per_joint[j].had_ties;
    }
    m.separability = scores.j;
    m.clustering_accuracy = scores.h;

    if (!scores.any_degenerate) {
        m.index = compensation_index(m.location_deviation, m.angle_difference, m.separability,
                                     m.clustering_accuracy, options.index);
    }
    return m;
}

}  // namespace

std::vector<TargetMetrics> compute_metrics(const Dataset& dataset, Orientation orientation,
                                           const ComputeOptions& options) {
    options.index.validate();
    const BlockTable table = preprocess_blocks(dataset, orientation, options);

    std::vector<TargetMetrics> metrics(kTargetCount);
    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        for (int n = 1; n <= static_cast<int>(kTargetCount); ++n)
            metrics[static_cast<std::size_t>(n - 1)] = compute_one_target(table, dataset, n, options);
        return metrics;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    std::atomic<int> next{1};
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const int n = next.fetch_add(1);
                if (n > static_cast<int>(kTargetCount)) return;
                try {
                    metrics[static_cast<std::size_t>(n - 1)] =
                        compute_one_target(table, dataset, n, options);
                } catch (...) {
                    const std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return metrics;
}

namespace {

const std::array<const char*, kJointCount> kJointSuffix{"e", "s", "t"};
const std::array<const char*, kMovementAxisCount> kAxisSuffix{"ex", "sx", "sy", "sz",
                                                              "tx", "ty", "tz"};

std::string fmt(double v) { return csv::format_double(v, 12); }

std::string flags_field(const TargetMetrics& m) {
    std::string flags;
    auto add = [&](const std::string& token) {
        if (!flags.empty()) flags += ";";
        flags += token;
    };
    for (std::size_t j = 0; j < kJointCount; ++j) {
        if (m.separability_degenerate[j]) add(std::string("sep_degenerate:") + kJointSuffix[j]);
        if (m.clustering_ties[j]) add(std::string("clus_ties:") + kJointSuffix[j]);
    }
    return flags;
}

}  // namespace

std::vector<std::string> metrics_csv_header() {
    std::vector<std::string> h{"target"};
    for (const auto& j : kJointSuffix) h.push_back(std::string("loc_dev_") + j);
    h.push_back("loc_dev");
    for (const auto& a : kAxisSuffix) h.push_back(std::string("ang_diff_") + a);
    for (const auto& j : kJointSuffix) h.push_back(std::string("ang_diff_") + j);
    h.push_back("ang_diff");
    h.insert(h.end(), {"loc_std_u", "loc_std_b", "ang_std_u", "ang_std_b"});
    for (const auto& j : kJointSuffix) h.push_back(std::string("sep_") + j);
    h.push_back("sep");
    for (const auto& j : kJointSuffix) h.push_back(std::string("clus_acc_") + j);
    h.push_back("clus_acc");
    h.push_back("index");
    for (const auto& j : kJointSuffix) h.push_back(std::string("win_") + j);
    h.push_back("flags");
    return h;
}

std::string metrics_csv(const std::vector<TargetMetrics>& metrics) {
    std::string out = csv::format_row(metrics_csv_header());
    for (const auto& m : metrics) {
        std::vector<std::string> row{std::to_string(m.target.index)};
        for (double v : m.location_deviation_per_joint) row.push_back(fmt(v));
        row.push_back(fmt(m.location_deviation));
        for (double v : m.angle_difference_per_axis) row.push_back(fmt(v));
        for (double v : m.angle_difference_per_joint) row.push_back(fmt(v));
        row.push_back(fmt(m.angle_difference));
        row.push_back(fmt(m.location_std_unbraced));
        row.push_back(fmt(m.location_std_braced));
        row.push_back(fmt(m.angle_std_unbraced));
        row.push_back(fmt(m.angle_std_braced));
        for (std::size_t j = 0; j < kJointCount; ++j)
            row.push_back(m.separability_degenerate[j] ? "nan" : fmt(m.separability_per_joint[j]));
        row.push_back(std::any_of(m.separability_degenerate.begin(), m.separability_degenerate.end(),
                                  [](bool b) { return b; })
                          ? "nan"
                          : fmt(m.separability));
        for (double v : m.clustering_accuracy_per_joint) row.push_back(fmt(v));
        row.push_back(fmt(m.clustering_accuracy));
        row.push_back(m.index ? fmt(*m.index) : "");
        for (const auto& cfg : m.winning_config) row.push_back(cfg.name());
        row.push_back(flags_field(m));
        out += csv::format_row(row);
    }
    return out;
}

std::string write_metrics_files(const std::vector<TargetMetrics>& metrics, Orientation orientation,
                                const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string main_path =
        (fs::path(out_dir) / ("metrics_" + to_code(orientation) + ".csv")).string();
    {
        std::ofstream out(main_path, std::ios::binary);
        out << metrics_csv(metrics);
    }

    for (std::size_t j = 0; j < kJointCount; ++j) {
        const std::string path =
            (fs::path(out_dir) / ("joint_" + std::string(kJointSuffix[j]) + "_" +
                                  to_code(orientation) + ".csv"))
                .string();
        std::ofstream out(path, std::ios::binary);
        std::vector<std::string> header{"target", "loc_dev", "ang_diff", "sep", "sep_degenerate",
                                        "clus_acc", "win_config", "clus_ties"};
        out << csv::format_row(header);
        for (const auto& m : metrics) {
            out << csv::format_row({std::to_string(m.target.index),
                                    fmt(m.location_deviation_per_joint[j]),
                                    fmt(m.angle_difference_per_joint[j]),
                                    m.separability_degenerate[j] ? "nan" : fmt(m.separability_per_joint[j]),
                                    m.separability_degenerate[j] ? "1" : "0",
                                    fmt(m.clustering_accuracy_per_joint[j]), m.winning_config[j].name(),
                                    m.clustering_ties[j] ? "1" : "0"});
        }
    }
    return main_path;
}

std::vector<std::string> metric_column_names() {
    std::vector<std::string> names;
    for (const auto& name : metrics_csv_header())
        if (name != "target" && name != "flags" && !name.starts_with("win_")) names.push_back(name);
    return names;
}

std::array<std::optional<double>, kTargetCount> metric_column_from_csv(const std::string& csv_path,
                                                                       const std::string& metric) {
    const csv::Table table = csv::read_file(csv_path);
    const int c_target = table.column("target");
    if (c_target < 0) throw Error(csv_path + ": missing 'target' column");
    const int c_metric = table.column(metric);
    if (c_metric < 0) {
        std::string known;
        for (const auto& n : metric_column_names()) known += (known.empty() ? "" : ", ") + n;
        throw UnknownMetricError(csv_path + ": no metric column '" + metric + "' (known: " + known + ")");
    }

    std::array<std::optional<double>, kTargetCount> values{};
    std::array<bool, kTargetCount> seen{};
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t line = table.line_numbers[i];
        long target{};
        const std::string& tf = row[static_cast<std::size_t>(c_target)];
        const auto [p, ec] = std::from_chars(tf.data(), tf.data() + tf.size(), target);
        if (ec != std::errc{} || p != tf.data() + tf.size() || target < 1 ||
            target > static_cast<long>(kTargetCount))
            throw MalformedRowError(csv_path, line, "bad target field '" + tf + "'");
        if (seen[static_cast<std::size_t>(target - 1)])
            throw MalformedRowError(csv_path, line, "duplicate target " + std::to_string(target));
        seen[static_cast<std::size_t>(target - 1)] = true;

        const std::string& field = row[static_cast<std::size_t>(c_metric)];
        if (field.empty() || field == "nan") continue;  // flagged cell
        double value{};
        const auto [vp, vec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (vec != std::errc{} || vp != field.data() + field.size() || !std::isfinite(value))
            throw MalformedRowError(csv_path, line, "column '" + metric + "': bad value '" + field + "'");
        values[static_cast<std::size_t>(target - 1)] = value;
    }
    for (std::size_t n = 0; n < kTargetCount; ++n)
        if (!seen[n]) throw Error(csv_path + ": missing row for target " + std::to_string(n + 1));
    return values;
}

}  // namespace compmotion
