#include "compmotion/types.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace compmotion {

std::string to_code(Condition c) { return c == Condition::Unbraced ? "u" : "b"; }
std::string to_code(Orientation o) { return o == Orientation::Horizontal ? "horizontal" : "vertical"; }
std::string to_code(JointId j) {
    switch (j) {
        case JointId::Elbow: return "e";
        case JointId::Shoulder: return "s";
        default: return "t";
    }
}
std::string to_code(AxisId d) {
    switch (d) {
        case AxisId::X: return "x";
        case AxisId::Y: return "y";
        default: return "z";
    }
}

Condition condition_from_code(const std::string& code) {
    if (code == "u" || code == "unbraced") return Condition::Unbraced;
    if (code == "b" || code == "braced") return Condition::Braced;
    throw Error("unknown condition code: '" + code + "' (expected u|b)");
}

Orientation orientation_from_code(const std::string& code) {
    if (code == "h" || code == "horizontal") return Orientation::Horizontal;
    if (code == "v" || code == "vertical") return Orientation::Vertical;
    throw Error("unknown orientation code: '" + code + "' (expected horizontal|vertical)");
}

JointId joint_from_code(const std::string& code) {
    if (code == "e" || code == "elbow") return JointId::Elbow;
    if (code == "s" || code == "shoulder") return JointId::Shoulder;
    if (code == "t" || code == "trunk") return JointId::Trunk;
    throw Error("unknown joint code: '" + code + "' (expected e|s|t)");
}

AxisId axis_from_code(const std::string& code) {
    if (code == "x") return AxisId::X;
    if (code == "y") return AxisId::Y;
    if (code == "z") return AxisId::Z;
    throw Error("unknown axis code: '" + code + "' (expected x|y|z)");
}

NromTable NromTable::from_degrees(const std::array<double, kMovementAxisCount>& degrees) {
    for (std::size_t i = 0; i < kMovementAxisCount; ++i) {
        if (!std::isfinite(degrees[i]) || degrees[i] <= 0.0) {
            const auto& ax = kMovementAxes[i];
            throw NromIncompleteError("NROM for " + to_code(ax.joint) + "." + to_code(ax.axis) +
                                      " must be a positive finite value, got " +
                                      std::to_string(degrees[i]));
        }
    }
    NromTable t;
    t.degrees_ = degrees;
    return t;
}

GridSpec GridSpec::custom(const std::array<std::pair<int, int>, kTargetCount>& cells) {
    std::set<std::pair<int, int>> seen;
    for (std::size_t n = 0; n < kTargetCount; ++n) {
        const auto [row, col] = cells[n];
        if (row < 1 || row > static_cast<int>(kGridRows) || col < 1 || col > static_cast<int>(kGridCols))
            throw Error("grid cell out of range for target " + std::to_string(n + 1));
        if (!seen.insert(cells[n]).second)
            throw Error("grid numbering is not a bijection: cell (" + std::to_string(row) + "," +
                        std::to_string(col) + ") assigned twice");
    }
    GridSpec g;
    g.numbering = Numbering::Custom;
    g.cells_by_target = cells;
    return g;
}

namespace {

std::string cell_to_string(const CellKey& k) {
    std::ostringstream os;
    os << "s" << k.subject_id << "/" << to_code(k.condition) << "/" << to_code(k.orientation)
       << "/t" << k.target;
    return os.str();
}

}  // namespace

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << (passed() ? "PASS" : "FAIL") << ": " << missing_cells.size() << " missing cell(s), "
       << duplicate_cells.size() << " duplicate(s), " << nonfinite_frames.size()
       << " non-finite frame(s), " << bad_intervals.size() << " bad interval(s), "
       << errors.size() << " other error(s), " << warnings.size() << " warning(s)";
    for (std::size_t i = 0; i < missing_cells.size() && i < 8; ++i)
        os << "\n  missing: " << cell_to_string(missing_cells[i]);
    if (missing_cells.size() > 8) os << "\n  ... " << missing_cells.size() - 8 << " more missing";
    for (const auto& d : duplicate_cells) os << "\n  duplicate: " << cell_to_string(d);
    for (const auto& f : nonfinite_frames)
        os << "\n  non-finite: " << cell_to_string({f.subject_id, f.condition, f.orientation, f.target})
           << " frame " << f.frame << " field " << f.field;
    for (const auto& b : bad_intervals) os << "\n  bad interval: " << cell_to_string(b);
    for (const auto& e : errors) os << "\n  error: " << e;
    for (const auto& w : warnings) os << "\n  warning: " << w;
    return os.str();
}

ValidationReport validate_dataset(const Dataset& dataset, bool allow_partial) {
    ValidationReport report;

    for (const auto& s : dataset.subjects) {
        if (s.subject_id < 1 || s.subject_id > static_cast<int>(kSubjectCount))
            report.errors.push_back("subject id out of range 1..7: " + std::to_string(s.subject_id));
        if (!(s.height_mm > s.arm_length_mm && s.arm_length_mm > 0.0))
            report.errors.push_back("subject " + std::to_string(s.subject_id) +
                                    ": expected height_mm > arm_length_mm > 0");
    }

    // Factorial coverage over the fixed 7 x 2 x 2 x 49 design.
    std::map<std::tuple<int, int, int, int>, int> counts;
    for (const auto& r : dataset.records) {
        ++counts[{r.subject_id, static_cast<int>(r.condition), static_cast<int>(r.orientation),
                  r.target.index}];
    }
    for (int s = 1; s <= static_cast<int>(kSubjectCount); ++s) {
        for (int c = 0; c < 2; ++c) {
            for (int o = 0; o < 2; ++o) {
                for (int n = 1; n <= static_cast<int>(kTargetCount); ++n) {
                    const auto it = counts.find({s, c, o, n});
                    const CellKey key{s, static_cast<Condition>(c), static_cast<Orientation>(o), n};
                    if (it == counts.end())
                        report.missing_cells.push_back(key);
                    else if (it->second > 1)
                        report.duplicate_cells.push_back(key);
                }
            }
        }
    }

    for (const auto& r : dataset.records) {
        const CellKey key{r.subject_id, r.condition, r.orientation, r.target.index};
        if (r.samples.empty() || r.reach_start > r.reach_end || r.reach_end >= r.samples.size()) {
            report.bad_intervals.push_back(key);
            continue;
        }
        for (std::size_t f = 0; f < r.samples.size(); ++f) {
            const auto& pose = r.samples[f];
            for (std::size_t j = 0; j < kJointCount; ++j) {
                for (int d = 0; d < 3; ++d) {
                    if (!std::isfinite(pose.locations[j][static_cast<std::size_t>(d)])) {
                        report.nonfinite_frames.push_back(
                            {r.subject_id, r.condition, r.orientation, r.target.index, f,
                             "loc_" + to_code(static_cast<JointId>(j)) + "_" +
                                 to_code(static_cast<AxisId>(d))});
                    }
                }
            }
            for (std::size_t a = 0; a < kMovementAxisCount; ++a) {
                if (!std::isfinite(pose.angles[a])) {
                    report.nonfinite_frames.push_back(
                        {r.subject_id, r.condition, r.orientation, r.target.index, f,
                         "ang_" + to_code(kMovementAxes[a].joint) + "_" + to_code(kMovementAxes[a].axis)});
                }
            }
        }
    }

    if (allow_partial && !report.missing_cells.empty()) {
        report.warnings.push_back(std::to_string(report.missing_cells.size()) +
                                  " cell(s) missing (allowed by --allow-partial)");
        report.missing_cells.clear();
    }
    return report;
}

}  // namespace compmotion
