#include <doctest.h>

#include <regex>
#include <set>

#include "compmotion/csv.hpp"
#include "compmotion/heatmap.hpp"

using namespace compmotion;

namespace {

CellValues constant_values(double v) {
    CellValues values{};
    for (auto& c : values) c = v;
    return values;
}

// Fill colors of the 49 cell rects, in document order (target order for the
// row-major grid).
std::vector<std::string> cell_fills(const std::string& svg) {
    std::vector<std::string> fills;
    const std::regex rect_re("<rect x=\"[0-9]+\" y=\"[0-9]+\" width=\"84\" height=\"84\" "
                             "fill=\"([^\"]+)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), rect_re);
         it != std::sregex_iterator(); ++it)
        fills.push_back((*it)[1]);
    return fills;
}

double fill_luminance(const std::string& fill) {
    REQUIRE(fill.size() == 7);
    const int r = std::stoi(fill.substr(1, 2), nullptr, 16);
    const int g = std::stoi(fill.substr(3, 2), nullptr, 16);
    const int b = std::stoi(fill.substr(5, 2), nullptr, 16);
    return 0.299 * r + 0.587 * g + 0.114 * b;
}

}  // namespace

TEST_CASE("target_to_cell: row-major from the subject's perspective") {
    const GridSpec grid;
    CHECK(target_to_cell(TargetId(1), grid) == Cell{1, 1});
    CHECK(target_to_cell(TargetId(7), grid) == Cell{1, 7});
    CHECK(target_to_cell(TargetId(23), grid) == Cell{4, 2});
    CHECK(target_to_cell(TargetId(37), grid) == Cell{6, 2});
    CHECK(target_to_cell(TargetId(49), grid) == Cell{7, 7});
}

TEST_CASE("target_to_cell: top-right numbering mirrors columns") {
    const GridSpec grid = GridSpec::row_major_top_right();
    CHECK(target_to_cell(TargetId(1), grid) == Cell{1, 7});
    CHECK(target_to_cell(TargetId(7), grid) == Cell{1, 1});
    CHECK(target_to_cell(TargetId(49), grid) == Cell{7, 1});
}

TEST_CASE("grid numbering is a bijection and cell_to_target inverts it") {
    for (const GridSpec& grid : {GridSpec::row_major_top_left(), GridSpec::row_major_top_right()}) {
        std::set<std::pair<int, int>> seen;
        for (int n = 1; n <= 49; ++n) {
            const Cell c = target_to_cell(TargetId(n), grid);
            CHECK(seen.insert({c.row, c.col}).second);
            CHECK(cell_to_target(c, grid).index == n);
        }
    }
}

TEST_CASE("render_svg: equal values give a uniform color and a single legend label") {
    const std::string svg = render_svg(constant_values(3.25), GridSpec{});
    const auto fills = cell_fills(svg);
    REQUIRE(fills.size() == 49);
    for (const auto& f : fills) CHECK(f == fills.front());
    CHECK(svg.find("3.25</text>") != std::string::npos);
    CHECK(svg.find("url(#ramp)") == std::string::npos);  // no gradient legend
}

TEST_CASE("render_svg: flagged cell is hatched and excluded from the scale") {
    CellValues values = constant_values(1.0);
    values[10] = 100.0;   // the only real maximum
    values[20] = std::nullopt;
    const std::string svg = render_svg(values, GridSpec{});
    const auto fills = cell_fills(svg);
    REQUIRE(fills.size() == 49);
    CHECK(fills[20] == "url(#hatch)");
    // Scale runs 1..100, so unflagged minimum cells stay near white.
    CHECK(fill_luminance(fills[0]) > 250.0);
    CHECK(fill_luminance(fills[10]) < 80.0);
    CHECK(svg.find("--") != std::string::npos);  // flagged annotation
}

TEST_CASE("render_svg: color deepens row-major when values equal the target index") {
    CellValues values{};
    for (int n = 1; n <= 49; ++n) values[static_cast<std::size_t>(n - 1)] = static_cast<double>(n);
    const std::string svg = render_svg(values, GridSpec{});
    const auto fills = cell_fills(svg);
    REQUIRE(fills.size() == 49);
    for (std::size_t i = 1; i < fills.size(); ++i)
        CHECK(fill_luminance(fills[i]) < fill_luminance(fills[i - 1]));
}

TEST_CASE("render_svg: deterministic byte-for-byte") {
    CellValues values{};
    for (int n = 1; n <= 49; ++n) values[static_cast<std::size_t>(n - 1)] = std::sqrt(n * 1.7);
    HeatmapOptions options;
    options.title = "metric";
    CHECK(render_svg(values, GridSpec{}, options) == render_svg(values, GridSpec{}, options));
}

TEST_CASE("render_csv_matrix: parses back to 6 significant digits") {
    CellValues values{};
    for (int n = 1; n <= 49; ++n)
        values[static_cast<std::size_t>(n - 1)] = 0.123456789 * static_cast<double>(n);
    values[13] = std::nullopt;

    const std::string csv_text = render_csv_matrix(values, GridSpec{});
    const csv::Table parsed = csv::parse("c1,c2,c3,c4,c5,c6,c7\n" + csv_text);
    REQUIRE(parsed.rows.size() == 7);
    for (int row = 1; row <= 7; ++row) {
        for (int col = 1; col <= 7; ++col) {
            const int n = (row - 1) * 7 + col;
            const std::string& field =
                parsed.rows[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(col - 1)];
            if (n == 14) {
                CHECK(field == "nan");
                continue;
            }
            const double round_tripped = std::stod(field);
            const double original = *values[static_cast<std::size_t>(n - 1)];
            // 6 significant digits guarantee 5e-6 relative precision.
            CHECK(round_tripped == doctest::Approx(original).epsilon(5e-6));
        }
    }
}

TEST_CASE("render heatmap: fixed scale pins the legend endpoints") {
    CellValues values = constant_values(0.4);
    HeatmapOptions options;
    options.fixed_scale = {{0.0, 2.0}};
    const std::string svg = render_svg(values, GridSpec{}, options);
    CHECK(svg.find(">2</text>") != std::string::npos);
    CHECK(svg.find(">0</text>") != std::string::npos);
}

TEST_CASE("render: all cells flagged is an error") {
    CellValues values{};
    CHECK_THROWS_AS(render_svg(values, GridSpec{}), AllCellsFlaggedError);
    CHECK_THROWS_AS(render_csv_matrix(values, GridSpec{}), AllCellsFlaggedError);
    CHECK_THROWS_AS(render_terminal(values, GridSpec{}), AllCellsFlaggedError);
}

TEST_CASE("render_terminal: aligned rows, shades deepen with value") {
    CellValues values{};
    for (int n = 1; n <= 49; ++n) values[static_cast<std::size_t>(n - 1)] = static_cast<double>(n);
    const std::string text = render_terminal(values, GridSpec{});
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n' ? 1 : 0;
    CHECK(lines == 8);  // 7 rows + scale line
    CHECK(text.find('@') != std::string::npos);
    CHECK(text.find("scale:") != std::string::npos);

    const std::string ansi =
        render_terminal(values, GridSpec{}, HeatmapOptions{.title = "", .fixed_scale = {}, .ansi = true});
    CHECK(ansi.find("\x1b[48;5;") != std::string::npos);
}
