#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "compmotion/config.hpp"
#include "compmotion/heatmap.hpp"
#include "compmotion/pipeline.hpp"
#include "compmotion/synth.hpp"

namespace fs = std::filesystem;
using namespace compmotion;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;
constexpr int kExitDegenerate = 3;

struct CommonArgs {
    std::string config_path;
    std::optional<std::string> schema_path;
    std::optional<std::string> nrom_path;
};

ToolConfig load_tool_config(const CommonArgs& args) {
    std::string path = args.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("COMPMOTION_CONFIG")) path = env;
    }
    ToolConfig cfg = path.empty() ? ToolConfig{} : ToolConfig::from_json_file(path);
    if (args.schema_path) cfg.schema_path = args.schema_path;
    if (args.nrom_path) cfg.nrom_path = args.nrom_path;
    return cfg;
}

CsvSchemaConfig resolve_schema(const ToolConfig& cfg) {
    return cfg.schema_path ? CsvSchemaConfig::from_json_file(*cfg.schema_path)
                           : CsvSchemaConfig::canonical();
}

std::string resolve_nrom(const ToolConfig& cfg, const std::string& dataset_path) {
    if (cfg.nrom_path) return *cfg.nrom_path;
    const fs::path base = fs::is_directory(dataset_path) ? fs::path(dataset_path)
                                                         : fs::path(dataset_path).parent_path();
    return (base / "nrom.csv").string();
}

std::vector<Orientation> parse_orientations(const std::string& value) {
    if (value == "both") return {Orientation::Horizontal, Orientation::Vertical};
    return {orientation_from_code(value)};
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << bytes;
}

std::optional<std::pair<double, double>> parse_scale(const std::string& scale) {
    if (scale.empty() || scale == "auto") return std::nullopt;
    const std::string prefix = "fixed:";
    if (scale.rfind(prefix, 0) != 0)
        throw ConfigError("--scale expects 'auto' or 'fixed:<lo>,<hi>', got '" + scale + "'");
    const std::string body = scale.substr(prefix.size());
    const auto comma = body.find(',');
    if (comma == std::string::npos)
        throw ConfigError("--scale fixed:<lo>,<hi> needs two comma-separated numbers");
    return std::pair{std::stod(body.substr(0, comma)), std::stod(body.substr(comma + 1))};
}

int run_validate(const std::string& dataset_path, const CommonArgs& common, bool allow_partial) {
    const ToolConfig cfg = load_tool_config(common);
    const Dataset dataset =
        load_dataset(dataset_path, resolve_schema(cfg), resolve_nrom(cfg, dataset_path));
    const ValidationReport report = validate_dataset(dataset, allow_partial);
    if (report.passed()) {
        std::cout << report.summary() << "\n";
        return kExitOk;
    }
    std::cerr << report.summary() << "\n";
    return kExitValidation;
}

int run_compute(const std::string& dataset_path, const CommonArgs& common,
                const std::string& orientation, const std::string& out_dir, int jobs, bool zscore,
                const std::string& reference_scope, bool strict, bool allow_partial) {
    ToolConfig cfg = load_tool_config(common);
    if (jobs > 0) cfg.compute.jobs = jobs;
    if (zscore) cfg.compute.zscore_features = true;
    if (!reference_scope.empty()) {
        if (reference_scope == "per-orientation")
            cfg.compute.reference_scope = ReferenceScope::PerOrientation;
        else if (reference_scope == "pooled")
            cfg.compute.reference_scope = ReferenceScope::Pooled;
        else
            throw ConfigError("unknown --reference-scope '" + reference_scope + "'");
    }

    const Dataset dataset =
        load_dataset(dataset_path, resolve_schema(cfg), resolve_nrom(cfg, dataset_path));
    const ValidationReport report = validate_dataset(dataset, allow_partial);
    if (!report.passed()) {
        std::cerr << report.summary() << "\n";
        return kExitValidation;
    }

    bool any_degenerate = false;
    for (Orientation o : parse_orientations(orientation)) {
        const std::vector<TargetMetrics> metrics = compute_metrics(dataset, o, cfg.compute);
        const std::string path = write_metrics_files(metrics, o, out_dir);
        std::size_t flagged = 0;
        for (const auto& m : metrics) flagged += m.flagged() ? 1 : 0;
        any_degenerate = any_degenerate || flagged > 0;
        std::cout << path << ": 49 targets, " << flagged << " flagged cell(s)\n";
        if (flagged > 0)
            std::cerr << "warning: " << flagged
                      << " cell(s) have degenerate separability; excluded from averages\n";
    }
    return strict && any_degenerate ? kExitDegenerate : kExitOk;
}

int run_render(const std::string& metrics_csv, const CommonArgs& common, const std::string& metric,
               std::string out_path, std::string format, const std::string& scale,
               const std::string& grid_json, const std::string& title, bool ansi) {
    const ToolConfig cfg = load_tool_config(common);
    GridSpec grid = cfg.grid;
    if (!grid_json.empty()) grid = grid_from_json(grid_json);

    const auto values = metric_column_from_csv(metrics_csv, metric);
    HeatmapOptions options;
    options.title = title.empty() ? metric : title;
    options.fixed_scale = parse_scale(scale);
    options.ansi = ansi;

    if (format.empty()) {
        if (out_path.empty()) format = "term";
        else if (out_path.ends_with(".csv")) format = "csv";
        else format = "svg";
    }
    std::string artifact;
    if (format == "svg") artifact = render_svg(values, grid, options);
    else if (format == "csv") artifact = render_csv_matrix(values, grid);
    else if (format == "term") artifact = render_terminal(values, grid, options);
    else throw ConfigError("unknown --format '" + format + "' (svg|csv|term)");

    if (out_path.empty()) std::cout << artifact;
    else write_file(out_path, artifact);
    return kExitOk;
}

int run_synth(const CommonArgs&, const std::string& params_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed, std::optional<double> kappa,
              std::optional<double> noise, std::optional<int> subjects) {
    SynthParams params =
        params_path.empty() ? SynthParams{} : synth_params_from_json_file(params_path);
    if (seed) params.seed = *seed;
    if (kappa) params.compensation_gain = *kappa;
    if (noise) params.strategy_noise_mm = *noise;
    if (subjects) params.n_subjects = *subjects;

    const Dataset dataset = generate_dataset(params);
    write_dataset_csv(dataset, out_dir);
    std::cout << out_dir << ": " << dataset.records.size() << " records, "
              << dataset.subjects.size() << " subjects\n";
    return kExitOk;
}

int run_report(const std::string& dataset_path, const CommonArgs& common,
               const std::string& orientation, const std::string& out_dir, int jobs,
               bool allow_partial) {
    const int compute_rc = run_compute(dataset_path, common, orientation, out_dir, jobs, false, "",
                                       false, allow_partial);
    if (compute_rc != kExitOk) return compute_rc;

    const ToolConfig cfg = load_tool_config(common);
    static const std::array<const char*, 5> kMetrics{"loc_dev", "ang_diff", "sep", "clus_acc",
                                                     "index"};
    for (Orientation o : parse_orientations(orientation)) {
        const std::string metrics_path =
            (fs::path(out_dir) / ("metrics_" + to_code(o) + ".csv")).string();
        for (const char* metric : kMetrics) {
            const auto values = metric_column_from_csv(metrics_path, metric);
            HeatmapOptions options;
            options.title = std::string(metric) + " (" + to_code(o) + ")";
            const std::string stem = std::string(metric) + "_" + to_code(o);
            write_file((fs::path(out_dir) / (stem + ".svg")).string(),
                       render_svg(values, cfg.grid, options));
            write_file((fs::path(out_dir) / (stem + ".csv")).string(),
                       render_csv_matrix(values, cfg.grid));
        }
        std::cout << "report (" << to_code(o) << "): " << kMetrics.size()
                  << " heatmaps written to " << out_dir << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compensatory-motion metrics over a 7x7 reaching grid"};
    app.require_subcommand(1);

    CommonArgs common;
    app.add_option("--config", common.config_path,
                   "JSON config file (default: $COMPMOTION_CONFIG if set)");

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option_function<std::string>(
            "--schema", [&](const std::string& v) { common.schema_path = v; },
            "CSV schema adapter (JSON); default is the canonical schema");
        cmd->add_option_function<std::string>(
            "--nrom", [&](const std::string& v) { common.nrom_path = v; },
            "NROM table path (default: <dataset>/nrom.csv)");
    };

    // validate
    auto* validate = app.add_subcommand("validate", "Check a dataset for completeness and defects");
    std::string v_dataset;
    bool v_allow_partial = false;
    validate->add_option("dataset", v_dataset, "dataset directory or reaches CSV")->required();
    validate->add_flag("--allow-partial", v_allow_partial, "missing cells become warnings");
    add_common(validate);

    // compute
    auto* compute = app.add_subcommand("compute", "Compute per-target metrics CSVs");
    std::string c_dataset, c_orientation = "both", c_out, c_scope;
    int c_jobs = 0;
    bool c_zscore = false, c_strict = false, c_allow_partial = false;
    compute->add_option("dataset", c_dataset, "dataset directory or reaches CSV")->required();
    compute->add_option("--orientation", c_orientation, "horizontal|vertical|both (default both)");
    compute->add_option("--out", c_out, "output directory")->required();
    compute->add_option("--jobs", c_jobs, "worker threads (default 1)");
    compute->add_option("--reference-scope", c_scope, "per-orientation|pooled");
    compute->add_flag("--zscore", c_zscore, "z-score features before group metrics");
    compute->add_flag("--strict", c_strict, "exit 3 when any cell is degenerate");
    compute->add_flag("--allow-partial", c_allow_partial, "tolerate missing cells at validation");
    add_common(compute);

    // render
    auto* render = app.add_subcommand("render", "Render a heatmap from a metrics CSV");
    std::string r_csv, r_metric, r_out, r_format, r_scale, r_grid, r_title;
    bool r_ansi = false;
    render->add_option("metrics_csv", r_csv, "metrics CSV from 'compute'")->required();
    render->add_option("--metric", r_metric, "metric column name, e.g. index")->required();
    render->add_option("--out", r_out, "output path (stdout when omitted)");
    render->add_option("--format", r_format, "svg|csv|term (default from --out extension)");
    render->add_option("--scale", r_scale, "auto (default) or fixed:<lo>,<hi>");
    render->add_option("--grid", r_grid, "grid numbering JSON");
    render->add_option("--title", r_title, "heatmap title");
    render->add_flag("--ansi", r_ansi, "ANSI shading for term format");
    add_common(render);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    std::string s_params, s_out;
    std::optional<std::uint64_t> s_seed;
    std::optional<double> s_kappa, s_noise;
    std::optional<int> s_subjects;
    synth->add_option("--params", s_params, "SynthParams JSON");
    synth->add_option("--out", s_out, "output directory")->required();
    synth->add_option("--seed", s_seed, "override rng seed");
    synth->add_option("--kappa", s_kappa, "override compensation gain");
    synth->add_option("--noise", s_noise, "override strategy noise (mm)");
    synth->add_option("--subjects", s_subjects, "override subject count");

    // report
    auto* report = app.add_subcommand("report", "Compute metrics and render all five heatmaps");
    std::string p_dataset, p_orientation = "both", p_out;
    int p_jobs = 0;
    bool p_allow_partial = false;
    report->add_option("dataset", p_dataset, "dataset directory or reaches CSV")->required();
    report->add_option("--orientation", p_orientation, "horizontal|vertical|both (default both)");
    report->add_option("--out", p_out, "output directory")->required();
    report->add_option("--jobs", p_jobs, "worker threads (default 1)");
    report->add_flag("--allow-partial", p_allow_partial, "tolerate missing cells at validation");
    add_common(report);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return run_validate(v_dataset, common, v_allow_partial);
        if (compute->parsed())
            return run_compute(c_dataset, common, c_orientation, c_out, c_jobs, c_zscore, c_scope,
                               c_strict, c_allow_partial);
        if (render->parsed())
            return run_render(r_csv, common, r_metric, r_out, r_format, r_scale, r_grid, r_title,
                              r_ansi);
        if (synth->parsed()) return run_synth(common, s_params, s_out, s_seed, s_kappa, s_noise,
                                              s_subjects);
        if (report->parsed())
            return run_report(p_dataset, common, p_orientation, p_out, p_jobs, p_allow_partial);
    } catch (const MalformedRowError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const MissingColumnError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UnitUndeclaredError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NromIncompleteError& e) {
        std::cerr << "NROM error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UnknownMetricError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
