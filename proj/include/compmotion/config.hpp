#pragma once

#include <optional>
#include <string>

#include "compmotion/pipeline.hpp"
#include "compmotion/synth.hpp"
#include "compmotion/types.hpp"

namespace compmotion {

/// Tool-level configuration shared by the CLI subcommands. Every field has
/// a usable default; a JSON config file and then command-line flags layer
/// on top.
struct ToolConfig {
    std::optional<std::string> nrom_path;
    std::optional<std::string> schema_path;
    ComputeOptions compute{};
    GridSpec grid{};

    static ToolConfig from_json_file(const std::string& path);
};

/// Parses SynthParams from JSON; absent keys keep their defaults.
SynthParams synth_params_from_json_file(const std::string& path);

/// Parses a GridSpec from JSON: {"numbering": "row_major_top_left" |
/// "row_major_top_right" | "custom", "cells": {"1": [1,1], ...}}.
GridSpec grid_from_json(const std::string& path);

}  // namespace compmotion
