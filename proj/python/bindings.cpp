#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "compmotion/compensation.hpp"
#include "compmotion/config.hpp"
#include "compmotion/group_metrics.hpp"
#include "compmotion/heatmap.hpp"
#include "compmotion/ingest.hpp"
#include "compmotion/pipeline.hpp"
#include "compmotion/synth.hpp"

namespace py = pybind11;
using namespace compmotion;

namespace {

DistanceMetric metric_from_string(const std::string& s) {
    if (s == "manhattan") return DistanceMetric::Manhattan;
    if (s == "euclidean") return DistanceMetric::Euclidean;
    throw Error("unknown distance metric '" + s + "' (manhattan|euclidean)");
}

Linkage linkage_from_string(const std::string& s) {
    if (s == "complete") return Linkage::Complete;
    if (s == "average") return Linkage::Average;
    if (s == "single") return Linkage::Single;
    throw Error("unknown linkage '" + s + "' (complete|average|single)");
}

GridSpec grid_from_string(const std::string& numbering) {
    if (numbering == "row_major_top_left") return GridSpec::row_major_top_left();
    if (numbering == "row_major_top_right") return GridSpec::row_major_top_right();
    throw Error("unknown grid numbering '" + numbering + "'");
}

std::vector<FeatureVector> rows_to_features(const std::vector<std::vector<double>>& rows) {
    std::vector<FeatureVector> features;
    features.reserve(rows.size());
    for (const auto& row : rows) {
        FeatureVector f;
        f.values = row;
        features.push_back(std::move(f));
    }
    return features;
}

py::dict metrics_to_dict(const TargetMetrics& m) {
    py::dict d;
    d["target"] = m.target.index;
    d["loc_dev"] = m.location_deviation;
    d["ang_diff"] = m.angle_difference;
    d["sep"] = m.separability;
    d["clus_acc"] = m.clustering_accuracy;
    d["loc_dev_per_joint"] = m.location_deviation_per_joint;
    d["ang_diff_per_joint"] = m.angle_difference_per_joint;
    d["ang_diff_per_axis"] = m.angle_difference_per_axis;
    d["sep_per_joint"] = m.separability_per_joint;
    d["clus_acc_per_joint"] = m.clustering_accuracy_per_joint;
    d["loc_std_u"] = m.location_std_unbraced;
    d["loc_std_b"] = m.location_std_braced;
    d["ang_std_u"] = m.angle_std_unbraced;
    d["ang_std_b"] = m.angle_std_braced;
    std::vector<std::string> winners;
    for (const auto& cfg : m.winning_config) winners.push_back(cfg.name());
    d["winning_config"] = winners;
    d["sep_degenerate"] = m.separability_degenerate;
    d["clus_ties"] = m.clustering_ties;
    if (m.index) d["index"] = *m.index;
    else d["index"] = py::none();
    return d;
}

CellValues cells_from_list(const std::vector<std::optional<double>>& values) {
    if (values.size() != kTargetCount)
        throw Error("expected 49 values, got " + std::to_string(values.size()));
    CellValues cells{};
    for (std::size_t i = 0; i < kTargetCount; ++i) cells[i] = values[i];
    return cells;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Compensatory-motion metrics over a 7x7 reaching grid";

    py::register_exception<Error>(m, "CompmotionError");

    py::class_<SynthParams>(m, "SynthParams")
        .def(py::init<>())
        .def_readwrite("n_subjects", &SynthParams::n_subjects)
        .def_readwrite("height_min_mm", &SynthParams::height_min_mm)
        .def_readwrite("height_max_mm", &SynthParams::height_max_mm)
        .def_readwrite("arm_min_mm", &SynthParams::arm_min_mm)
        .def_readwrite("arm_max_mm", &SynthParams::arm_max_mm)
        .def_readwrite("grid_spacing_mm", &SynthParams::grid_spacing_mm)
        .def_readwrite("compensation_gain", &SynthParams::compensation_gain)
        .def_readwrite("strategy_noise_mm", &SynthParams::strategy_noise_mm)
        .def_readwrite("region_row_min", &SynthParams::region_row_min)
        .def_readwrite("region_row_max", &SynthParams::region_row_max)
        .def_readwrite("region_col_min", &SynthParams::region_col_min)
        .def_readwrite("region_col_max", &SynthParams::region_col_max)
        .def_readwrite("background_gain", &SynthParams::background_gain)
        .def_readwrite("max_trunk_travel_mm", &SynthParams::max_trunk_travel_mm)
        .def_readwrite("seed", &SynthParams::seed);

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("n_records",
                               [](const Dataset& d) { return d.records.size(); })
        .def_property_readonly("subjects",
                               [](const Dataset& d) {
                                   std::vector<std::tuple<int, double, double>> out;
                                   for (const auto& s : d.subjects)
                                       out.emplace_back(s.subject_id, s.height_mm, s.arm_length_mm);
                                   return out;
                               })
        .def("__repr__", [](const Dataset& d) {
            return "<Dataset: " + std::to_string(d.subjects.size()) + " subjects, " +
                   std::to_string(d.records.size()) + " records>";
        });

    m.def("generate_dataset", &generate_dataset, py::arg("params") = SynthParams{},
          "Generate a deterministic synthetic dataset");
    m.def("write_dataset_csv", &write_dataset_csv, py::arg("dataset"), py::arg("out_dir"),
          "Write a dataset as canonical CSV files");
    m.def(
        "load_dataset",
        [](const std::string& path, const std::optional<std::string>& schema_path,
           const std::optional<std::string>& nrom_path) {
            const CsvSchemaConfig schema = schema_path ? CsvSchemaConfig::from_json_file(*schema_path)
                                                       : CsvSchemaConfig::canonical();
            const std::string nrom = nrom_path ? *nrom_path : path + "/nrom.csv";
            return load_dataset(path, schema, nrom);
        },
        py::arg("path"), py::arg("schema_path") = py::none(), py::arg("nrom_path") = py::none());

    m.def(
        "validate_dataset",
        [](const Dataset& dataset, bool allow_partial) {
            const ValidationReport report = validate_dataset(dataset, allow_partial);
            py::dict d;
            d["passed"] = report.passed();
            d["n_missing_cells"] = report.missing_cells.size();
            d["n_duplicates"] = report.duplicate_cells.size();
            d["n_nonfinite_frames"] = report.nonfinite_frames.size();
            d["n_bad_intervals"] = report.bad_intervals.size();
            d["errors"] = report.errors;
            d["warnings"] = report.warnings;
            d["summary"] = report.summary();
            return d;
        },
        py::arg("dataset"), py::arg("allow_partial") = false);

    m.def(
        "compute_metrics",
        [](const Dataset& dataset, const std::string& orientation, int jobs, bool zscore,
           const std::string& reference_scope) {
            ComputeOptions options;
            options.jobs = jobs;
            options.zscore_features = zscore;
            if (reference_scope == "pooled") options.reference_scope = ReferenceScope::Pooled;
            else if (reference_scope != "per-orientation")
                throw Error("unknown reference_scope '" + reference_scope + "'");
            const auto metrics =
                compute_metrics(dataset, orientation_from_code(orientation), options);
            py::list out;
            for (const auto& m_ : metrics) out.append(metrics_to_dict(m_));
            return out;
        },
        py::arg("dataset"), py::arg("orientation") = "horizontal", py::arg("jobs") = 1,
        py::arg("zscore") = false, py::arg("reference_scope") = "per-orientation");

    m.def(
        "separability",
        [](const std::vector<std::vector<double>>& unbraced,
           const std::vector<std::vector<double>>& braced) {
            const auto u = rows_to_features(unbraced);
            const auto b = rows_to_features(braced);
            const SeparabilityResult r = separability(u, b);
            py::dict d;
            d["j"] = r.j;
            d["within_scatter"] = r.within_scatter;
            d["between_scatter"] = r.between_scatter;
            d["degenerate"] = r.degenerate;
            return d;
        },
        py::arg("unbraced"), py::arg("braced"));

    m.def(
        "agglomerative_cluster",
        [](const std::vector<std::vector<double>>& points, const std::string& metric,
           const std::string& linkage, int k) {
            const ClusterResult r = agglomerative_cluster_rows(
                points, {metric_from_string(metric), linkage_from_string(linkage)}, k);
            return py::make_tuple(r.labels, r.had_ties);
        },
        py::arg("points"), py::arg("metric") = "manhattan", py::arg("linkage") = "complete",
        py::arg("k") = 2);

    m.def(
        "clustering_accuracy",
        [](const std::vector<int>& labels, const std::vector<std::string>& conditions) {
            std::vector<Condition> truth;
            truth.reserve(conditions.size());
            for (const auto& c : conditions) truth.push_back(condition_from_code(c));
            return clustering_accuracy(labels, truth);
        },
        py::arg("labels"), py::arg("conditions"));

    m.def(
        "compensation_index",
        [](double loc_dev, double ang_diff, double sep, double clus_acc, double divisor_l,
           double divisor_a) {
            IndexConfig cfg;
            cfg.divisor_l = divisor_l;
            cfg.divisor_a = divisor_a;
            return compensation_index(loc_dev, ang_diff, sep, clus_acc, cfg);
        },
        py::arg("loc_dev"), py::arg("ang_diff"), py::arg("sep"), py::arg("clus_acc"),
        py::arg("divisor_l") = 100.0, py::arg("divisor_a") = 10.0);

    m.def(
        "target_to_cell",
        [](int target, const std::string& numbering) {
            const Cell c = target_to_cell(TargetId(target), grid_from_string(numbering));
            return py::make_tuple(c.row, c.col);
        },
        py::arg("target"), py::arg("numbering") = "row_major_top_left");

    m.def(
        "render_svg",
        [](const std::vector<std::optional<double>>& values, const std::string& numbering,
           const std::string& title) {
            HeatmapOptions options;
            options.title = title;
            return render_svg(cells_from_list(values), grid_from_string(numbering), options);
        },
        py::arg("values"), py::arg("numbering") = "row_major_top_left", py::arg("title") = "");

    m.def(
        "render_csv_matrix",
        [](const std::vector<std::optional<double>>& values, const std::string& numbering) {
            return render_csv_matrix(cells_from_list(values), grid_from_string(numbering));
        },
        py::arg("values"), py::arg("numbering") = "row_major_top_left");

#ifdef COMPMOTION_VERSION
    m.attr("__version__") = COMPMOTION_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
