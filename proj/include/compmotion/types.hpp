#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compmotion/errors.hpp"

namespace compmotion {

/// Reaching condition: unbraced (normative) or braced (wrist immobilised).
/// Serialized as "u" / "b" everywhere.
enum class Condition : std::uint8_t { Unbraced = 0, Braced = 1 };

/// Placement of the 7x7 target grid.
enum class Orientation : std::uint8_t { Horizontal = 0, Vertical = 1 };

/// The three analysed joint centres.
enum class JointId : std::uint8_t { Elbow = 0, Shoulder = 1, Trunk = 2 };

/// Movement axis within a joint. The elbow uses only X (flexion);
/// shoulder and trunk use all three.
enum class AxisId : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline constexpr std::size_t kJointCount = 3;
inline constexpr std::size_t kSubjectCount = 7;
inline constexpr std::size_t kGridRows = 7;
inline constexpr std::size_t kGridCols = 7;
inline constexpr std::size_t kTargetCount = kGridRows * kGridCols;

/// One of the 7 measured joint movements.
///
/// Axis-to-movement mapping (config-visible, see GridSpec notes in the
/// README for the grid analogue): shoulder X = plane of elevation,
/// Y = elevation, Z = internal rotation; trunk X = flexion/extension,
/// Y = rotation, Z = lateral flexion.
struct MovementAxis {
    JointId joint;
    AxisId axis;
};

/// Canonical ordering of the 7 movement axes: e.x, s.x, s.y, s.z, t.x, t.y, t.z.
inline constexpr std::array<MovementAxis, 7> kMovementAxes{{
    {JointId::Elbow, AxisId::X},
    {JointId::Shoulder, AxisId::X},
    {JointId::Shoulder, AxisId::Y},
    {JointId::Shoulder, AxisId::Z},
    {JointId::Trunk, AxisId::X},
    {JointId::Trunk, AxisId::Y},
    {JointId::Trunk, AxisId::Z},
}};

inline constexpr std::size_t kMovementAxisCount = kMovementAxes.size();

/// Index of (joint, axis) in kMovementAxes order, or -1 if the joint does
/// not move along that axis (elbow Y/Z).
constexpr int movement_axis_index(JointId joint, AxisId axis) {
    if (joint == JointId::Elbow) return axis == AxisId::X ? 0 : -1;
    const int base = joint == JointId::Shoulder ? 1 : 4;
    return base + static_cast<int>(axis);
}

/// Number of movement axes a joint has (1 for elbow, 3 otherwise).
constexpr std::size_t joint_axis_count(JointId joint) {
    return joint == JointId::Elbow ? 1 : 3;
}

std::string to_code(Condition c);
std::string to_code(Orientation o);
std::string to_code(JointId j);
std::string to_code(AxisId d);
Condition condition_from_code(const std::string& code);
Orientation orientation_from_code(const std::string& code);
JointId joint_from_code(const std::string& code);
AxisId axis_from_code(const std::string& code);

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }
inline Vec3 operator/(const Vec3& v, double s) { return {v[0] / s, v[1] / s, v[2] / s}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Target index on the 7x7 grid, 1..49.
struct TargetId {
    int index = 1;

    TargetId() = default;
    explicit TargetId(int n) : index(n) {
        if (n < 1 || n > static_cast<int>(kTargetCount))
            throw Error("target index out of range 1..49: " + std::to_string(n));
    }
    friend bool operator==(TargetId a, TargetId b) { return a.index == b.index; }
    friend bool operator<(TargetId a, TargetId b) { return a.index < b.index; }
};

/// Static participant information. All lengths in millimetres.
struct SubjectInfo {
    int subject_id = 0;
    double height_mm = 0.0;
    double arm_length_mm = 0.0;
};

/// Elbow/shoulder/trunk locations (mm) plus the 7 joint angles (degrees)
/// of a single frame. Angles are stored in kMovementAxes order.
struct FinalPose {
    std::array<Vec3, kJointCount> locations{};
    std::array<double, kMovementAxisCount> angles{};

    const Vec3& location(JointId j) const { return locations[static_cast<std::size_t>(j)]; }
    Vec3& location(JointId j) { return locations[static_cast<std::size_t>(j)]; }
    double angle(JointId j, AxisId d) const {
        const int i = movement_axis_index(j, d);
        if (i < 0) throw Error("elbow has no " + to_code(d) + " movement axis");
        return angles[static_cast<std::size_t>(i)];
    }
};

/// One subject x condition x orientation x target reach: the sampled
/// trajectory plus the reach interval within it.
struct ReachRecord {
    int subject_id = 0;
    Condition condition = Condition::Unbraced;
    Orientation orientation = Orientation::Horizontal;
    TargetId target{};
    std::vector<FinalPose> samples;
    std::size_t reach_start = 0;
    std::size_t reach_end = 0;
};

/// Normal Range of Motion per movement axis, degrees, all strictly positive.
class NromTable {
  public:
    NromTable() = default;

    /// Builds the table; throws NromIncompleteError when a value is not
    /// strictly positive or not finite.
    static NromTable from_degrees(const std::array<double, kMovementAxisCount>& degrees);

    double degrees(JointId j, AxisId d) const {
        const int i = movement_axis_index(j, d);
        if (i < 0) throw Error("elbow has no " + to_code(d) + " movement axis");
        return degrees_[static_cast<std::size_t>(i)];
    }
    double degrees(std::size_t movement_axis) const { return degrees_[movement_axis]; }
    const std::array<double, kMovementAxisCount>& values() const { return degrees_; }

  private:
    std::array<double, kMovementAxisCount> degrees_{150.0, 170.0, 180.0, 90.0, 85.0, 40.0, 35.0};
};

/// The full study dataset: 7 subjects x 2 conditions x 2 orientations x 49
/// targets = 1372 records when complete.
struct Dataset {
    std::vector<SubjectInfo> subjects;
    std::vector<ReachRecord> records;
    NromTable nrom;
};

/// Mapping between target index and heatmap cell, as seen from the
/// subject's perspective. Cells are 1-indexed (row 1 = top, col 1 = left).
struct GridSpec {
    enum class Numbering : std::uint8_t { RowMajorTopLeft, RowMajorTopRight, Custom };

    Numbering numbering = Numbering::RowMajorTopLeft;
    /// Used only when numbering == Custom; cells_by_target[n-1] = (row, col).
    std::array<std::pair<int, int>, kTargetCount> cells_by_target{};
    double spacing_mm = 300.0;

    static GridSpec row_major_top_left() { return GridSpec{}; }
    static GridSpec row_major_top_right() {
        GridSpec g;
        g.numbering = Numbering::RowMajorTopRight;
        return g;
    }
    /// Throws when the map is not a bijection onto the 7x7 cells.
    static GridSpec custom(const std::array<std::pair<int, int>, kTargetCount>& cells);
};

/// Location of a defective frame inside a dataset.
struct FrameRef {
    int subject_id;
    Condition condition;
    Orientation orientation;
    int target;
    std::size_t frame;
    std::string field;
};

/// A (subject, condition, orientation, target) cell of the factorial design.
struct CellKey {
    int subject_id;
    Condition condition;
    Orientation orientation;
    int target;
};

/// Result of validate_dataset. Passes iff no errors; warnings allowed.
struct ValidationReport {
    std::vector<CellKey> missing_cells;
    std::vector<CellKey> duplicate_cells;
    std::vector<FrameRef> nonfinite_frames;
    std::vector<CellKey> bad_intervals;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool passed() const {
        return missing_cells.empty() && duplicate_cells.empty() && nonfinite_frames.empty() &&
               bad_intervals.empty() && errors.empty();
    }
    std::string summary() const;
};

/// Checks factorial coverage (subjects 1..7 x u/b x h/v x 1..49), frame
/// finiteness, reach intervals, subject info, and the NROM table.
/// With allow_partial, missing cells are downgraded to warnings.
ValidationReport validate_dataset(const Dataset& dataset, bool allow_partial = false);

}  // namespace compmotion
