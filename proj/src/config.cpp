#include "compmotion/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace compmotion {

namespace {

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

GridSpec grid_from_json_value(const nlohmann::json& g, const std::string& path) {
    const std::string numbering = g.value("numbering", "row_major_top_left");
    if (numbering == "row_major_top_left") return GridSpec::row_major_top_left();
    if (numbering == "row_major_top_right") return GridSpec::row_major_top_right();
    if (numbering != "custom")
        throw ConfigError(path + ": unknown grid numbering '" + numbering + "'");
    if (!g.contains("cells")) throw ConfigError(path + ": custom grid numbering requires \"cells\"");
    std::array<std::pair<int, int>, kTargetCount> cells{};
    std::array<bool, kTargetCount> seen{};
    for (const auto& [key, value] : g.at("cells").items()) {
        const int n = std::stoi(key);
        if (n < 1 || n > static_cast<int>(kTargetCount))
            throw ConfigError(path + ": grid cell key out of range: " + key);
        cells[static_cast<std::size_t>(n - 1)] = {value.at(0).get<int>(), value.at(1).get<int>()};
        seen[static_cast<std::size_t>(n - 1)] = true;
    }
    for (std::size_t n = 0; n < kTargetCount; ++n)
        if (!seen[n]) throw ConfigError(path + ": custom grid misses target " + std::to_string(n + 1));
    return GridSpec::custom(cells);
}

}  // namespace

ToolConfig ToolConfig::from_json_file(const std::string& path) {
    const nlohmann::json j = read_json(path);
    ToolConfig cfg;

    if (j.contains("nrom_path")) cfg.nrom_path = j.at("nrom_path").get<std::string>();
    if (j.contains("schema_path")) cfg.schema_path = j.at("schema_path").get<std::string>();

    if (j.contains("reference_scope")) {
        const std::string scope = j.at("reference_scope").get<std::string>();
        if (scope == "per-orientation") cfg.compute.reference_scope = ReferenceScope::PerOrientation;
        else if (scope == "pooled") cfg.compute.reference_scope = ReferenceScope::Pooled;
        else throw ConfigError(path + ": unknown reference_scope '" + scope + "'");
    }
    if (j.contains("index")) {
        const auto& idx = j.at("index");
        cfg.compute.index.divisor_l = idx.value("divisor_l", cfg.compute.index.divisor_l);
        cfg.compute.index.divisor_a = idx.value("divisor_a", cfg.compute.index.divisor_a);
        if (idx.contains("weights")) {
            const auto w = idx.at("weights").get<std::vector<double>>();
            if (w.size() != 4) throw ConfigError(path + ": index.weights must have 4 entries");
            std::copy(w.begin(), w.end(), cfg.compute.index.weights.begin());
        }
        cfg.compute.index.validate();
    }
    if (j.contains("joint_weights")) {
        const auto w = j.at("joint_weights").get<std::vector<double>>();
        if (w.size() != kJointCount) throw ConfigError(path + ": joint_weights must have 3 entries");
        double sum = 0.0;
        for (double v : w) {
            if (v < 0.0) throw ConfigError(path + ": joint_weights must be non-negative");
            sum += v;
        }
        if (sum <= 0.0) throw ConfigError(path + ": joint_weights must not all be zero");
        for (std::size_t i = 0; i < kJointCount; ++i) cfg.compute.joint_weights.w[i] = w[i] / sum;
    }
    if (j.contains("axis_weights")) {
        const auto w = j.at("axis_weights").get<std::vector<double>>();
        if (w.size() != 3) throw ConfigError(path + ": axis_weights must have 3 entries");
        double sum = 0.0;
        for (double v : w) {
            if (v < 0.0) throw ConfigError(path + ": axis_weights must be non-negative");
            sum += v;
        }
        if (sum <= 0.0) throw ConfigError(path + ": axis_weights must not all be zero");
        for (std::size_t i = 0; i < 3; ++i) cfg.compute.axis_weights.w[i] = w[i] / sum;
    }
    if (j.contains("clustering")) {
        cfg.compute.zscore_features = j.at("clustering").value("zscore", false);
    }
    cfg.compute.sample_std = j.value("sample_std", false);
    cfg.compute.jobs = j.value("jobs", 1);
    if (j.contains("grid")) cfg.grid = grid_from_json_value(j.at("grid"), path);
    return cfg;
}

GridSpec grid_from_json(const std::string& path) {
    return grid_from_json_value(read_json(path), path);
}

SynthParams synth_params_from_json_file(const std::string& path) {
    const nlohmann::json j = read_json(path);
    SynthParams p;
    p.n_subjects = j.value("n_subjects", p.n_subjects);
    p.height_min_mm = j.value("height_min_mm", p.height_min_mm);
    p.height_max_mm = j.value("height_max_mm", p.height_max_mm);
    p.arm_min_mm = j.value("arm_min_mm", p.arm_min_mm);
    p.arm_max_mm = j.value("arm_max_mm", p.arm_max_mm);
    p.grid_spacing_mm = j.value("grid_spacing_mm", p.grid_spacing_mm);
    p.compensation_gain = j.value("compensation_gain", p.compensation_gain);
    p.strategy_noise_mm = j.value("strategy_noise_mm", p.strategy_noise_mm);
    if (j.contains("distorted_region")) {
        const auto& r = j.at("distorted_region");
        p.region_row_min = r.value("row_min", p.region_row_min);
        p.region_row_max = r.value("row_max", p.region_row_max);
        p.region_col_min = r.value("col_min", p.region_col_min);
        p.region_col_max = r.value("col_max", p.region_col_max);
    }
    p.background_gain = j.value("background_gain", p.background_gain);
    p.max_trunk_travel_mm = j.value("max_trunk_travel_mm", p.max_trunk_travel_mm);
    p.seed = j.value("seed", p.seed);
    return p;
}

}  // namespace compmotion
