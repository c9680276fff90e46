#include "compmotion/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "compmotion/csv.hpp"
#include "compmotion/errors.hpp"

namespace compmotion {

Cell target_to_cell(TargetId target, const GridSpec& grid) {
    const int n0 = target.index - 1;
    switch (grid.numbering) {
        case GridSpec::Numbering::RowMajorTopLeft:
            return {n0 / static_cast<int>(kGridCols) + 1, n0 % static_cast<int>(kGridCols) + 1};
        case GridSpec::Numbering::RowMajorTopRight:
            return {n0 / static_cast<int>(kGridCols) + 1,
                    static_cast<int>(kGridCols) - n0 % static_cast<int>(kGridCols)};
        default: {
            const auto [row, col] = grid.cells_by_target[static_cast<std::size_t>(n0)];
            return {row, col};
        }
    }
}

TargetId cell_to_target(Cell cell, const GridSpec& grid) {
    if (cell.row < 1 || cell.row > static_cast<int>(kGridRows) || cell.col < 1 ||
        cell.col > static_cast<int>(kGridCols))
        throw Error("cell out of range: (" + std::to_string(cell.row) + "," + std::to_string(cell.col) + ")");
    for (int n = 1; n <= static_cast<int>(kTargetCount); ++n)
        if (target_to_cell(TargetId(n), grid) == cell) return TargetId(n);
    throw Error("grid numbering does not cover cell (" + std::to_string(cell.row) + "," +
                std::to_string(cell.col) + ")");
}

namespace {

struct Scale {
    double lo = 0.0;
    double hi = 0.0;
};

Scale value_scale(const CellValues& values, const HeatmapOptions& options) {
    if (options.fixed_scale) return {options.fixed_scale->first, options.fixed_scale->second};
    bool any = false;
    Scale s{0.0, 0.0};
    for (const auto& v : values) {
        if (!v) continue;
        if (!any) {
            s.lo = s.hi = *v;
            any = true;
        } else {
            s.lo = std::min(s.lo, *v);
            s.hi = std::max(s.hi, *v);
        }
    }
    if (!any) throw AllCellsFlaggedError("heatmap: every cell is flagged");
    return s;
}

double normalized(double v, const Scale& s) {
    if (s.hi == s.lo) return 0.5;
    return std::clamp((v - s.lo) / (s.hi - s.lo), 0.0, 1.0);
}

// White to deep blue; deeper colour = larger value.
std::string ramp_color(double t) {
    const int r = static_cast<int>(std::lround(255.0 + t * (8.0 - 255.0)));
    const int g = static_cast<int>(std::lround(255.0 + t * (48.0 - 255.0)));
    const int b = static_cast<int>(std::lround(255.0 + t * (107.0 - 255.0)));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string fmt(double v, int digits = 4) { return csv::format_double(v, digits); }

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const CellValues& values, const GridSpec& grid, const HeatmapOptions& options) {
    const Scale scale = value_scale(values, options);
    const int cell = 84;
    const int left = 24, top = options.title.empty() ? 24 : 56;
    const int grid_w = cell * static_cast<int>(kGridCols);
    const int grid_h = cell * static_cast<int>(kGridRows);
    const int legend_x = left + grid_w + 28;
    const int width = legend_x + 96;
    const int height = top + grid_h + 24;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<defs>\n"
        << "<pattern id=\"hatch\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\" "
           "patternTransform=\"rotate(45)\">"
           "<rect width=\"8\" height=\"8\" fill=\"#f2f2f2\"/>"
           "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#999999\" stroke-width=\"3\"/></pattern>\n"
        << "<linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
           "<stop offset=\"0\" stop-color=\""
        << ramp_color(0.0) << "\"/><stop offset=\"1\" stop-color=\"" << ramp_color(1.0)
        << "\"/></linearGradient>\n"
        << "</defs>\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
    if (!options.title.empty())
        svg << "<text x=\"" << left << "\" y=\"34\" font-family=\"sans-serif\" font-size=\"20\" "
               "fill=\"#222222\">"
            << xml_escape(options.title) << "</text>\n";

    for (int n = 1; n <= static_cast<int>(kTargetCount); ++n) {
        const Cell c = target_to_cell(TargetId(n), grid);
        const int x = left + (c.col - 1) * cell;
        const int y = top + (c.row - 1) * cell;
        const auto& v = values[static_cast<std::size_t>(n - 1)];
        const std::string fill = v ? ramp_color(normalized(*v, scale)) : std::string("url(#hatch)");
        svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
            << "\" fill=\"" << fill << "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << x + 5 << "\" y=\"" << y + 15
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#888888\">" << n << "</text>\n";
        const std::string label = v ? fmt(*v) : std::string("--");
        const bool dark = v && normalized(*v, scale) > 0.55;
        svg << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 6
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\" fill=\""
            << (dark ? "#ffffff" : "#222222") << "\">" << label << "</text>\n";
    }

    // Legend: gradient bar from lo (bottom) to hi (top); a single label when
    // the scale is degenerate.
    if (scale.hi == scale.lo) {
        svg << "<rect x=\"" << legend_x << "\" y=\"" << top << "\" width=\"22\" height=\"" << grid_h
            << "\" fill=\"" << ramp_color(0.5) << "\" stroke=\"#555555\"/>\n"
            << "<text x=\"" << legend_x + 30 << "\" y=\"" << top + grid_h / 2 + 5
            << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222222\">" << fmt(scale.lo, 6)
            << "</text>\n";
    } else {
        svg << "<rect x=\"" << legend_x << "\" y=\"" << top << "\" width=\"22\" height=\"" << grid_h
            << "\" fill=\"url(#ramp)\" stroke=\"#555555\"/>\n"
            << "<text x=\"" << legend_x + 30 << "\" y=\"" << top + 12
            << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222222\">" << fmt(scale.hi, 6)
            << "</text>\n"
            << "<text x=\"" << legend_x + 30 << "\" y=\"" << top + grid_h
            << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222222\">" << fmt(scale.lo, 6)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_csv_matrix(const CellValues& values, const GridSpec& grid) {
    bool any = false;
    for (const auto& v : values) any = any || v.has_value();
    if (!any) throw AllCellsFlaggedError("heatmap: every cell is flagged");

    std::string out;
    for (int row = 1; row <= static_cast<int>(kGridRows); ++row) {
        std::vector<std::string> fields;
        fields.reserve(kGridCols);
        for (int col = 1; col <= static_cast<int>(kGridCols); ++col) {
            const TargetId n = cell_to_target({row, col}, grid);
            const auto& v = values[static_cast<std::size_t>(n.index - 1)];
            fields.push_back(v ? csv::format_double(*v, 6) : "nan");
        }
        out += csv::format_row(fields);
    }
    return out;
}

std::string render_terminal(const CellValues& values, const GridSpec& grid,
                            const HeatmapOptions& options) {
    const Scale scale = value_scale(values, options);
    static const char kRamp[] = " .:-=+*#%@";

    std::ostringstream out;
    if (!options.title.empty()) out << options.title << "\n";
    for (int row = 1; row <= static_cast<int>(kGridRows); ++row) {
        for (int col = 1; col <= static_cast<int>(kGridCols); ++col) {
            const TargetId n = cell_to_target({row, col}, grid);
            const auto& v = values[static_cast<std::size_t>(n.index - 1)];
            char buf[32];
            if (v) {
                const double t = normalized(*v, scale);
                const char shade = kRamp[std::min<std::size_t>(
                    static_cast<std::size_t>(t * 10.0), sizeof(kRamp) - 2)];
                std::snprintf(buf, sizeof(buf), " %c%9.3g", shade, *v);
                if (options.ansi) {
                    const int level = 232 + static_cast<int>(std::lround(t * 23.0));
                    out << "\x1b[48;5;" << level << "m" << (t > 0.5 ? "\x1b[97m" : "\x1b[30m") << buf
                        << "\x1b[0m";
                    continue;
                }
            } else {
                std::snprintf(buf, sizeof(buf), " x%9s", "--");
            }
            out << buf;
        }
        out << "\n";
    }
    out << "scale: " << fmt(scale.lo, 6) << " (" << kRamp[0] << ") to " << fmt(scale.hi, 6) << " (@)\n";
    return out.str();
}

}  // namespace compmotion
