#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "compmotion/pipeline.hpp"
#include "compmotion/synth.hpp"
#include "helpers.hpp"

using namespace compmotion;

TEST_CASE("pipeline: null compensation gives zero L and A and J") {
    SynthParams p;
    p.compensation_gain = 0.0;
    p.strategy_noise_mm = 4.0;
    p.seed = 3;
    const Dataset dataset = generate_dataset(p);
    const auto metrics = compute_metrics(dataset, Orientation::Horizontal);
    REQUIRE(metrics.size() == 49);
    for (const auto& m : metrics) {
        CHECK(m.location_deviation <= 1e-9);
        CHECK(m.angle_difference <= 1e-9);
        CHECK(m.separability <= 1e-9);
        CHECK(m.clustering_accuracy == doctest::Approx(0.5));
        REQUIRE(m.index.has_value());
        CHECK(*m.index == doctest::Approx(0.125).epsilon(1e-9));
    }
}

TEST_CASE("pipeline: worker count does not change results") {
    SynthParams p;
    p.seed = 17;
    const Dataset dataset = generate_dataset(p);

    ComputeOptions serial;
    serial.jobs = 1;
    ComputeOptions parallel;
    parallel.jobs = 5;
    const auto a = compute_metrics(dataset, Orientation::Vertical, serial);
    const auto b = compute_metrics(dataset, Orientation::Vertical, parallel);
    REQUIRE(a.size() == b.size());
    CHECK(metrics_csv(a) == metrics_csv(b));
}

TEST_CASE("pipeline: metrics survive the CSV round trip") {
    SynthParams p;
    p.seed = 8;
    const Dataset dataset = generate_dataset(p);
    const auto metrics = compute_metrics(dataset, Orientation::Horizontal);

    helpers::TempDir dir("pipeline_csv");
    const std::string path = write_metrics_files(metrics, Orientation::Horizontal, dir.str());
    CHECK(path.find("metrics_horizontal.csv") != std::string::npos);

    const auto loc_dev = metric_column_from_csv(path, "loc_dev");
    const auto index = metric_column_from_csv(path, "index");
    for (std::size_t n = 0; n < kTargetCount; ++n) {
        REQUIRE(loc_dev[n].has_value());
        CHECK(*loc_dev[n] == doctest::Approx(metrics[n].location_deviation).epsilon(1e-9));
        REQUIRE(index[n].has_value());
        CHECK(*index[n] == doctest::Approx(*metrics[n].index).epsilon(1e-9));
    }

    // Per-joint breakdown files exist alongside.
    for (const char* j : {"e", "s", "t"})
        CHECK(std::filesystem::exists(dir.path() / ("joint_" + std::string(j) + "_horizontal.csv")));

    CHECK_THROWS_AS(metric_column_from_csv(path, "no_such_metric"), UnknownMetricError);
}

TEST_CASE("pipeline: reference scope changes relative locations but not L") {
    // L is a difference of means of relativized locations; a per-block
    // constant reference cancels, so both scopes agree on L.
    SynthParams p;
    p.seed = 12;
    const Dataset dataset = generate_dataset(p);

    ComputeOptions per_orientation;
    ComputeOptions pooled;
    pooled.reference_scope = ReferenceScope::Pooled;
    const auto a = compute_metrics(dataset, Orientation::Horizontal, per_orientation);
    const auto b = compute_metrics(dataset, Orientation::Horizontal, pooled);
    for (std::size_t n = 0; n < kTargetCount; ++n)
        CHECK(a[n].location_deviation == doctest::Approx(b[n].location_deviation).epsilon(1e-9));
}

TEST_CASE("pipeline: incomplete datasets are rejected") {
    SynthParams p;
    p.n_subjects = 6;
    const Dataset dataset = generate_dataset(p);
    CHECK_THROWS_AS(compute_metrics(dataset, Orientation::Horizontal), SubjectCountMismatchError);

    Dataset full = generate_dataset(SynthParams{});
    full.records.erase(
        std::remove_if(full.records.begin(), full.records.end(),
                       [](const ReachRecord& r) {
                           return r.subject_id == 4 && r.condition == Condition::Braced &&
                                  r.orientation == Orientation::Horizontal && r.target.index == 20;
                       }),
        full.records.end());
    CHECK_THROWS_AS(compute_metrics(full, Orientation::Horizontal), Error);
}

TEST_CASE("pipeline: degenerate separability flags the cell and drops the index") {
    // All subjects identical and braced == unbraced: S_W == 0 per joint.
    Dataset dataset = generate_dataset(SynthParams{});
    // Overwrite every final pose of horizontal records with one fixed pose,
    // and make anthropometry identical so features coincide exactly.
    for (auto& s : dataset.subjects) {
        s.height_mm = 1700.0;
        s.arm_length_mm = 600.0;
    }
    const FinalPose fixed_rest = dataset.records.front().samples[0];
    const FinalPose fixed = dataset.records.front().samples[1];
    for (auto& r : dataset.records) {
        if (r.orientation == Orientation::Horizontal) {
            r.samples[0] = fixed_rest;
            r.samples[1] = fixed;
        }
    }

    const auto metrics = compute_metrics(dataset, Orientation::Horizontal);
    std::size_t flagged = 0;
    for (const auto& m : metrics) {
        if (m.flagged()) ++flagged;
        if (m.flagged()) {
            CHECK_FALSE(m.index.has_value());
            CHECK(m.separability_degenerate[0]);
        }
    }
    CHECK(flagged == kTargetCount);

    // The metrics CSV marks the degenerate cells as nan/empty.
    const std::string text = metrics_csv(metrics);
    CHECK(text.find("sep_degenerate:e") != std::string::npos);
}

TEST_CASE("metric_column_from_csv: validates shape") {
    helpers::TempDir dir("pipeline_badcsv");
    helpers::write_file(dir.path() / "short.csv", "target,index\n1,0.5\n");
    CHECK_THROWS_AS(metric_column_from_csv((dir.path() / "short.csv").string(), "index"), Error);

    std::string dup = "target,index\n";
    for (int n = 1; n <= 49; ++n) dup += std::to_string(n) + ",0.5\n";
    dup += "7,0.9\n";
    helpers::write_file(dir.path() / "dup.csv", dup);
    CHECK_THROWS_AS(metric_column_from_csv((dir.path() / "dup.csv").string(), "index"),
                    MalformedRowError);
}
