#pragma once

#include <optional>
#include <string>

#include "compmotion/types.hpp"

namespace compmotion {

/// 1-indexed heatmap cell; row 1 is the top row, col 1 the leftmost column
/// from the subject's perspective.
struct Cell {
    int row = 1;
    int col = 1;
    friend bool operator==(Cell a, Cell b) { return a.row == b.row && a.col == b.col; }
};

Cell target_to_cell(TargetId target, const GridSpec& grid);
TargetId cell_to_target(Cell cell, const GridSpec& grid);

/// Values keyed by target index - 1; a disengaged optional marks a flagged
/// cell (rendered hatched and excluded from the color scale).
using CellValues = std::array<std::optional<double>, kTargetCount>;

struct HeatmapOptions {
    std::string title;
    /// Fixed color-scale endpoints; default is the min/max of unflagged values.
    std::optional<std::pair<double, double>> fixed_scale;
    /// ANSI background shading for the terminal renderer.
    bool ansi = false;
};

/// SVG 1.1, 7x7 colored cells with numeric annotations, a single-hue ramp
/// legend, and hatched flagged cells. Deterministic byte-for-byte.
std::string render_svg(const CellValues& values, const GridSpec& grid, const HeatmapOptions& options = {});

/// 7x7 numeric matrix, 6 significant digits, flagged cells as "nan".
std::string render_csv_matrix(const CellValues& values, const GridSpec& grid);

/// Aligned text grid with a density ramp; plain characters unless
/// options.ansi is set.
std::string render_terminal(const CellValues& values, const GridSpec& grid,
                            const HeatmapOptions& options = {});

}  // namespace compmotion
